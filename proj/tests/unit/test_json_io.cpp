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


#include <gtest/gtest.h>

#include "meskit/json_io.hpp"

namespace meskit {
namespace {

TEST(MatrixJson, RoundTripsExactly) {
  const Matrix a = haar_unitary(3, std::uint64_t{1});
  const Json j = Json::parse(write_json(matrix_to_json(a)));
  EXPECT_EQ(j.at("rows"), 3);
  EXPECT_EQ(j.at("cols"), 3);
  EXPECT_EQ(matrix_from_json(j), a);
}

TEST(MatrixJson, RowMajorPairs) {
  Matrix a(1, 2);
  a << Complex(1.0, 2.0), Complex(3.0, -4.0);
  EXPECT_EQ(write_json(matrix_to_json(a)),
            "{\"cols\": 2, \"data\": [[1, 2], [3, -4]], \"rows\": 1}\n");
}

TEST(MatrixJson, RejectsMalformed) {
  EXPECT_THROW(matrix_from_json(Json::parse(R"({"rows": 2, "cols": 2, "data": [[1, 0]]})")),
               ParseError);
  EXPECT_THROW(matrix_from_json(Json::parse(R"({"rows": 1, "cols": 1, "data": [[1]]})")),
               ParseError);
  EXPECT_THROW(matrix_from_json(Json::parse(R"({"rows": 0, "cols": 1, "data": []})")),
               ParseError);
  EXPECT_THROW(matrix_from_json(Json::parse(R"({"cols": 1, "data": [[1, 0]]})")), ParseError);
  EXPECT_THROW(matrix_from_json(Json::parse(R"({"rows": 1, "cols": 1, "data": [["x", 0]]})")),
               ParseError);
}

TEST(DimsJson, RoundTripAndValidation) {
  EXPECT_EQ(dims_from_json(dims_to_json(Dims(2, 3))), Dims(2, 3));
  EXPECT_THROW(dims_from_json(Json::parse(R"({"m": 2, "n": 5})")), ParseError);
  EXPECT_THROW(dims_from_json(Json::parse(R"({"m": 2, "n": 4, "k": 3})")), ParseError);
}

TEST(SuperopJson, RoundTrip) {
  const Superoperator phi = random_adjoint_preserver(Dims(1, 2), Sigma::Transpose, 2).phi;
  const Superoperator back = superop_from_json(Json::parse(write_json(superop_to_json(phi))));
  EXPECT_EQ(back.dims, phi.dims);
  EXPECT_EQ(back.matrix, phi.matrix);
}

TEST(SuperopJson, RejectsSideMismatch) {
  Json j = superop_to_json(identity_superop(Dims(1, 2)));
  j["dims"] = dims_to_json(Dims(2, 1));
  EXPECT_THROW(superop_from_json(j), ParseError);
}

TEST(DecompositionJson, RoundTrip) {
  Decomposition d;
  d.sigma = Sigma::Transpose;
  d.u = haar_unitary(2, std::uint64_t{3});
  d.v = haar_unitary(4, std::uint64_t{4});
  d.kron_residual = 1.25e-15;
  d.verification_residual = 3.0e-16;
  const Decomposition back = decomposition_from_json(Json::parse(write_json(decomposition_to_json(d))));
  EXPECT_EQ(back.sigma, d.sigma);
  EXPECT_EQ(back.u, d.u);
  EXPECT_EQ(back.v, d.v);
  EXPECT_EQ(back.kron_residual, d.kron_residual);
  EXPECT_THROW(decomposition_from_json(Json::parse(R"({"sigma": "both"})")), ParseError);
}

TEST(ExtendedJson, CarriesBaseDimsAndSigma) {
  const ExtendedSuperoperator ext = extend(identity_superop(Dims(1, 2)), Sigma::Transpose);
  const Json j = extended_to_json(ext);
  EXPECT_EQ(j.at("sigma"), "transpose");
  EXPECT_EQ(dims_from_json(j.at("base_dims")), Dims(1, 2));
  EXPECT_EQ(dims_from_json(j.at("dims")), Dims(2, 1));
}

TEST(WriteJson, DeterministicSeventeenDigits) {
  const Json j = Json{{"x", 0.1}, {"y", 1.0 / 3.0}, {"z", 7}};
  EXPECT_EQ(write_json(j), "{\"x\": 0.10000000000000001, \"y\": 0.33333333333333331, \"z\": 7}\n");
}

TEST(ReadJsonFile, MissingAndInvalid) {
  EXPECT_THROW(read_json_file("/nonexistent/path.json"), ParseError);
}

}  // namespace
}  // namespace meskit
