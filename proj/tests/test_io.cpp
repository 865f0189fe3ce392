#include <doctest.h>

#include "clonelab/catalog.hpp"
#include "clonelab/conditions.hpp"
#include "clonelab/io.hpp"

using namespace clonelab;

TEST_CASE("function files round-trip and validate") {
  const auto [u, v] = uv_pair(3);
  const auto j = io::to_json(u);
  CHECK(j.at("k") == 3);
  CHECK(j.at("n") == 2);
  CHECK(io::function_from_json(j) == u);
  auto bad = j;
  bad["table"] = {0, 1};
  CHECK_THROWS_AS(io::function_from_json(bad), std::invalid_argument);
}

TEST_CASE("function set files keep the canonical order") {
  const auto s = slice(GeneratorSet(3, {uv_pair(3).first, uv_pair(3).second}), 2);
  const auto j = io::to_json(s);
  CHECK(io::function_set_from_json(j) == s);
  CHECK(j.at("closed_up_to") == 2);
  const auto& fns = j.at("functions");
  for (std::size_t i = 1; i < fns.size(); ++i) {
    CHECK(io::function_from_json(fns[i - 1]) < io::function_from_json(fns[i]));
  }
}

TEST_CASE("generator files reuse the set format") {
  const auto gens = GeneratorSet(3, {uv_pair(3).first, uv_pair(3).second});
  CHECK(io::generators_from_json(io::generators_to_json(gens)) == gens);
}

TEST_CASE("row set files sort rows lexicographically") {
  const auto h =
      QSet::from_tuples(2, 3, {{1, 1, 0}, {0, 0, 0}, {0, 1, 1}, {1, 0, 1}});
  const auto j = io::to_json(h);
  CHECK(j.at("rows")[0] == io::json::array({0, 0, 0}));
  CHECK(io::qset_from_json(j) == h);
}

TEST_CASE("subset family files") {
  const SubsetFamily fam(3, {{0, 1}, {2}});
  CHECK(io::family_from_json(io::to_json(fam)) == fam);
}

TEST_CASE("richness reports carry witnesses inline") {
  const auto report = delta_partial(symmetric_closure(
      GeneratorSet(3, {uv_pair(3).first, uv_pair(3).second})));
  const auto j = io::to_json(report);
  CHECK(j.at("condition") == "partial");
  CHECK(j.at("holds") == true);
  CHECK(j.at("witnesses").size() == report.witnesses.size());
  CHECK(j.at("counterexample").is_null());
}

TEST_CASE("class ids") {
  const auto named = PostClassId::named(PostTag::D2);
  CHECK(io::to_json(named).at("class") == "D2");
  CHECK(io::post_class_from_json(io::to_json(named)) == named);
  Fingerprint fp;
  fp.functions.emplace_back(1, Tuple{0, 1});
  const auto other = PostClassId::other(fp);
  const auto j = io::to_json(other);
  CHECK(j.at("class") == "Other");
  CHECK(io::post_class_from_json(j) == other);
}

TEST_CASE("characteristics serialize with sorted keys and reparse stably") {
  const auto chi = characteristic(
      GeneratorSet(3, {uv_pair(3).first, uv_pair(3).second}));
  const auto j = io::to_json(chi);
  CHECK(j.contains("r"));
  CHECK(j.at("R").contains("2"));
  CHECK(j.at("D").contains("3"));
  CHECK(j.dump() == io::to_json(chi).dump());
}

TEST_CASE("verification reports serialize their failure bundles") {
  VerificationReport report;
  report.statement = "statement";
  report.status = VerifyStatus::Failed;
  report.failures.push_back(FailureBundle{
      "detail", QSet::from_tuples(2, 2, {{0, 1}}), "only-if", false});
  const auto j = io::to_json(report);
  CHECK(j.at("status") == "failed");
  CHECK(j.at("failures").size() == 1);
  CHECK(j.at("failures")[0].at("h").at("m") == 2);
}

TEST_CASE("files are byte-identical across repeated writes") {
  const auto gens = GeneratorSet(4, klein_binary_functions(4));
  const auto path = std::filesystem::temp_directory_path() / "clonelab_io_test.json";
  io::write_json_file(path, io::generators_to_json(gens));
  const auto first = io::read_json_file(path);
  io::write_json_file(path, io::generators_to_json(gens));
  const auto second = io::read_json_file(path);
  CHECK(first == second);
  CHECK(io::generators_from_json(first) == gens);
  std::filesystem::remove(path);
}
