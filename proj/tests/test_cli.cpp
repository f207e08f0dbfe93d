#include "doctest.h"
#include "cli_support.hpp"

#include "hkcob/operators.hpp"
#include "hkcob/version.hpp"

#include <atomic>
#include <filesystem>

using namespace hkcob;
using namespace hkcob::cli;

namespace {

std::filesystem::path fresh_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("hkcob_test_" + name);
  std::filesystem::remove_all(dir);
  return dir;
}

}  // namespace

TEST_CASE("records render canonically") {
  ResultRecord r;
  r.kind = "chern";
  r.params = {{"n", 2}, {"family", "hilb"}};
  r.basis = "ch_2k";
  r.values = {{"2", 15}, {"1,1", 828}, {"x", frac(-6, 4)}};
  const std::string a = render(r, "json", false);
  CHECK(a == render(r, "json", false));
  const json j = json::parse(a);
  CHECK(j.at("values").at("x") == "-3/2");
  CHECK(j.at("values").at("2") == "15");
  CHECK(j.at("meta").at("conventions_hash") == conventions_hash());
  CHECK(a.find("\"basis\"") < a.find("\"kind\""));  // sorted keys
  CHECK(render(r, "csv", false) == "key,value\n\"2\",15\n\"1,1\",828\n\"x\",-3/2\n");
  CHECK(render(r, "text", true).find("~-1.5") != std::string::npos);
  CHECK_THROWS_AS(render(r, "xml", false), std::invalid_argument);
}

TEST_CASE("conventions hash") {
  CHECK(fnv1a64("") == 0xcbf29ce484222325ULL);
  CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cULL);
  CHECK(conventions_hash().size() == 16);
  CHECK(conventions_hash("sum_squares") != conventions_hash("length"));
}

TEST_CASE("state serialization round trip") {
  const SurfaceModel model = SurfaceModel::abelian();
  OperatorAlgebra ops(model);
  const FockState s = kummer_class(ops, 2);
  REQUIRE_FALSE(s.is_zero());
  CHECK(deserialize_state(serialize_state(s)) == s);
  CHECK(serialize_state(s) == serialize_state(deserialize_state(serialize_state(s))));
  CHECK_THROWS_AS(deserialize_state("12 1/2\n"), std::invalid_argument);
}

TEST_CASE("file state store") {
  const auto dir = fresh_dir("store");
  FileStateStore store(dir);
  FockState s = FockState::vacuum();
  s *= frac(7, 3);
  CHECK_FALSE(store.load("k").has_value());
  store.save("k", s);
  auto back = store.load("k");
  REQUIRE(back.has_value());
  CHECK(*back == s);
  CHECK_FALSE(store.load("other").has_value());
  CHECK_THROWS_AS(store.save("two\nlines", s), std::invalid_argument);
  std::filesystem::remove_all(dir);
}

TEST_CASE("cached and uncached engines agree") {
  const auto dir = fresh_dir("engine");
  ChernEngine plain;
  ChernEngine cached;
  cached.set_store(std::make_shared<FileStateStore>(dir));
  const auto v = plain.hilb_vector(3);
  CHECK(cached.hilb_vector(3) == v);
  CHECK_FALSE(std::filesystem::is_empty(dir));
  ChernEngine warm;  // a fresh engine reading the populated cache
  warm.set_store(std::make_shared<FileStateStore>(dir));
  CHECK(warm.hilb_vector(3) == v);
  CHECK(warm.kummer_vector(2) == plain.kummer_vector(2));
  std::filesystem::remove_all(dir);
}

TEST_CASE("worker pool") {
  for (int threads : {1, 2, 4}) {
    WorkerPool pool(threads);
    std::atomic<int> sum{0};
    std::vector<std::function<void()>> jobs;
    for (int i = 1; i <= 100; ++i) jobs.emplace_back([&sum, i] { sum += i; });
    pool.run(jobs);
    CHECK(sum == 5050);
    std::vector<std::function<void()>> failing{[] {}, [] { throw std::runtime_error("boom"); }, [] {}};
    CHECK_THROWS_AS(pool.run(failing), std::runtime_error);
  }
}

TEST_CASE("thread count does not change values") {
  WorkerPool pool(3);
  CobordismBasis threaded(std::make_shared<ChernEngine>(), pool.runner());
  CobordismBasis serial(std::make_shared<ChernEngine>());
  for (Family f : {Family::hilb, Family::kummer}) CHECK(threaded.basis_matrix(3, f).entries == serial.basis_matrix(3, f).entries);
}

TEST_CASE("argument parsing") {
  CHECK(parse_target("hilb:3").n == 3);
  CHECK(parse_target("og6:3").kind == "og6");
  CHECK_THROWS_AS(parse_target("hilb:0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_target("hilb"), std::invalid_argument);
  CHECK_THROWS_AS(parse_target("og6:4"), std::invalid_argument);
  CHECK_THROWS_AS(parse_target("p2:2"), std::invalid_argument);
  CHECK(parse_surface("k3").kind == SurfaceChoice::Kind::k3);
  CHECK(parse_surface("c2=12").c2 == 12);
  CHECK_THROWS_AS(parse_surface("c1=3"), std::domain_error);
  CHECK_THROWS_AS(parse_surface("c1=0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_surface("p2"), std::invalid_argument);
  CHECK(parse_partition_of("2,1", 3) == Partition{2, 1});
  CHECK_THROWS_AS(parse_partition_of("2,2", 3), std::invalid_argument);
  CHECK_THROWS_AS(parse_partition_of("2,a", 3), std::invalid_argument);
}
