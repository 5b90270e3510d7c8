// Copyright 2026 The DissipForge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <sstream>

#include <catch_amalgamated.hpp>

#include "dissipforge/serialization.hpp"

using namespace dissipforge;

TEST_CASE("number formatting", "[serialization]") {
  CHECK(round_sig15(0.1) == 0.1);
  CHECK(round_sig15(1.0 / 3.0) == 0.333333333333333);
  CHECK(round_sig15(0.0) == 0.0);
  CHECK(complex_from_json(Json::array({1.5, -2.0})) == Complex(1.5, -2.0));
  CHECK(complex_from_json(Json(0.25)) == Complex(0.25, 0.0));
  CHECK_THROWS_AS(complex_from_json(Json::array({1.0})), std::invalid_argument);
}

TEST_CASE("sequence round trip", "[serialization]") {
  for (const auto& seq : {compile_coupling(PauliString::parse("XXX"), 0.7, Adjacency::path(3)),
                          lower_to_ms(compile_coupling(PauliString::parse("YZ"), -1.2, Adjacency::path(2))),
                          compile_coupling(PauliString::parse("IZY"), 0.3, Adjacency::path(3))}) {
    const Json j = sequence_to_json(seq);
    const auto back = sequence_from_json(j);
    CHECK(back.num_qubits == seq.num_qubits);
    CHECK(back.target == seq.target);
    CHECK(back.gates.size() == seq.gates.size());
    CHECK(sequence_to_json(back).dump() == j.dump());
    CHECK(render_circuit(back) == render_circuit(seq));
    CHECK((realize_system(back) - realize_system(seq)).norm() < 1e-13);
  }
  Json bad = sequence_to_json(compile_coupling(PauliString::parse("XX"), 0.7, Adjacency::path(2)));
  bad["gates"][0]["kind"] = "teleport";
  CHECK_THROWS_AS(sequence_from_json(bad), std::invalid_argument);
}

TEST_CASE("dissipator round trip", "[serialization]") {
  const auto set = preset_lfor2();
  const auto back = dissipators_from_json(dissipators_to_json(set));
  REQUIRE(back.size() == set.size());
  for (std::size_t j = 0; j < set.size(); ++j) {
    CHECK(back[j].gamma == set[j].gamma);
    CHECK((back[j].op - set[j].op).norm() < 1e-14);
  }
  Json bad = Json::array({{{"gamma", 1.0}, {"matrix", Json::array({0, 1, 2})}}});
  CHECK_THROWS_AS(dissipators_from_json(bad), std::invalid_argument);
}

TEST_CASE("graph json", "[serialization]") {
  const auto g = graph_from_json(Json::parse(R"({"n": 3, "edges": [[1, 2], [2, 3]]})"));
  CHECK(g.n == 3);
  CHECK(g.edges.size() == 2);
  CHECK(graph_to_json(g).dump() == R"({"edges":[[1,2],[2,3]],"n":3})");
  CHECK_THROWS_AS(graph_from_json(Json::parse(R"({"n": 2, "edge": []})")), std::invalid_argument);
  CHECK_THROWS_AS(graph_from_json(Json::parse(R"({"n": 2, "edges": [[1, 5]]})")), std::invalid_argument);
}

TEST_CASE("evolution csv", "[serialization]") {
  const LindbladModel model(DissipatorSet{}.add(1.0, (ComplexMatrix(2, 2) << 0, 1, 0, 0).finished()));
  const auto rec = integrate(model, DensityMatrix::from_pure(PureState::basis(2, 1)), IntegrationOptions{1.0, 0.1, 5});
  std::ostringstream out;
  write_evolution_csv(out, rec);
  const std::string text = out.str();
  CHECK(text.rfind("t,fidelity,trace_error,purity,min_eig\n", 0) == 0);
  CHECK(std::count(text.begin(), text.end(), '\n') == 4);
  CHECK(text.find("nan") != std::string::npos);
}
