// Copyright 2026 The meskit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/**
 * @file json_io.hpp
 * JSON schemas:
 *   matrix         {"rows": r, "cols": c, "data": [[re, im], ...]}  (row-major)
 *   coisometry     matrix fields plus {"m": m, "n": n}
 *   superoperator  {"dims": {"m", "n", "k"}, "matrix": <matrix>}
 *   decomposition  {"sigma", "U", "V", "kron_residual", "verification_residual"}
 *
 * write_json prints every double with 17 significant digits so that equal
 * inputs give byte-identical files.
 */
#pragma once

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "meskit/classify.hpp"
#include "meskit/extension.hpp"

namespace meskit {

using Json = nlohmann::json;

namespace detail {

inline void write_json_impl(const Json& j, std::string& out) {
  switch (j.type()) {
    case Json::value_t::object: {
      out += '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ", ";
        first = false;
        out += Json(it.key()).dump();
        out += ": ";
        write_json_impl(it.value(), out);
      }
      out += '}';
      break;
    }
    case Json::value_t::array: {
      out += '[';
      bool first = true;
      for (const auto& item : j) {
        if (!first) out += ", ";
        first = false;
        write_json_impl(item, out);
      }
      out += ']';
      break;
    }
    case Json::value_t::number_float: {
      const double x = j.get<double>();
      if (!std::isfinite(x)) {
        out += "null";
        break;
      }
      char buf[40];
      std::snprintf(buf, sizeof buf, "%.17g", x);
      out += buf;
      break;
    }
    default:
      out += j.dump();
  }
}

}  // namespace detail

inline std::string write_json(const Json& j) {
  std::string out;
  detail::write_json_impl(j, out);
  out += '\n';
  return out;
}

inline Json matrix_to_json(const Matrix& a) {
  Json data = Json::array();
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      data.push_back(Json::array({a(i, j).real(), a(i, j).imag()}));
    }
  }
  return Json{{"rows", a.rows()}, {"cols", a.cols()}, {"data", std::move(data)}};
}

inline Matrix matrix_from_json(const Json& j) {
  try {
    const auto rows = j.at("rows").get<long long>();
    const auto cols = j.at("cols").get<long long>();
    const Json& data = j.at("data");
    if (rows < 1 || cols < 1) throw ParseError("matrix: rows and cols must be positive");
    if (!data.is_array() || static_cast<long long>(data.size()) != rows * cols) {
      throw ParseError("matrix: data must hold rows*cols entries");
    }
    Matrix a(rows, cols);
    for (long long idx = 0; idx < rows * cols; ++idx) {
      const Json& entry = data[static_cast<std::size_t>(idx)];
      if (!entry.is_array() || entry.size() != 2) {
        throw ParseError("matrix: entries must be [re, im] pairs");
      }
      const double re = entry[0].get<double>();
      const double im = entry[1].get<double>();
      if (!std::isfinite(re) || !std::isfinite(im)) throw ParseError("matrix: non-finite entry");
      a(idx / cols, idx % cols) = Complex(re, im);
    }
    return a;
  } catch (const Json::exception& e) {
    throw ParseError(std::string("matrix: ") + e.what());
  }
}

inline Json dims_to_json(const Dims& d) { return Json{{"m", d.m()}, {"n", d.n()}, {"k", d.k()}}; }

inline Dims dims_from_json(const Json& j) {
  try {
    const int m = j.at("m").get<int>();
    const int n = j.at("n").get<int>();
    const Dims d = Dims::from_mn(m, n);
    if (j.contains("k") && j.at("k").get<int>() != d.k()) throw ParseError("dims: k != n / m");
    return d;
  } catch (const Json::exception& e) {
    throw ParseError(std::string("dims: ") + e.what());
  } catch (const DimensionError& e) {
    throw ParseError(std::string("dims: ") + e.what());
  }
}

inline Json coisometry_to_json(const Coisometry& a) {
  Json j = matrix_to_json(a.matrix());
  j["m"] = a.m();
  j["n"] = a.n();
  return j;
}

inline Json superop_to_json(const Superoperator& phi) {
  return Json{{"dims", dims_to_json(phi.dims)}, {"matrix", matrix_to_json(phi.matrix)}};
}

inline Superoperator superop_from_json(const Json& j) {
  try {
    const Dims d = dims_from_json(j.at("dims"));
    Matrix mat = matrix_from_json(j.at("matrix"));
    if (mat.rows() != d.superop_side() || mat.cols() != d.superop_side()) {
      throw ParseError("superoperator: matrix side does not match dims");
    }
    return Superoperator(std::move(mat), d);
  } catch (const Json::exception& e) {
    throw ParseError(std::string("superoperator: ") + e.what());
  }
}

inline Json extended_to_json(const ExtendedSuperoperator& ext) {
  Json j = superop_to_json(ext.op);
  j["base_dims"] = dims_to_json(ext.base);
  j["sigma"] = to_string(ext.sigma);
  return j;
}

inline Json decomposition_to_json(const Decomposition& d) {
  return Json{{"sigma", to_string(d.sigma)},
              {"U", matrix_to_json(d.u)},
              {"V", matrix_to_json(d.v)},
              {"kron_residual", d.kron_residual},
              {"verification_residual", d.verification_residual}};
}

inline Decomposition decomposition_from_json(const Json& j) {
  try {
    Decomposition d;
    d.sigma = parse_sigma(j.at("sigma").get<std::string>());
    d.u = matrix_from_json(j.at("U"));
    d.v = matrix_from_json(j.at("V"));
    d.kron_residual = j.at("kron_residual").get<double>();
    d.verification_residual = j.at("verification_residual").get<double>();
    return d;
  } catch (const Json::exception& e) {
    throw ParseError(std::string("decomposition: ") + e.what());
  }
}

inline Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
}

}  // namespace meskit
