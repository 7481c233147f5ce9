#include <doctest.h>

#include <filesystem>
#include <string>

#include "routepred/error.hpp"
#include "routepred/registry.hpp"
#include "routepred/rng.hpp"
#include "routepred/text.hpp"

using namespace routepred;
namespace fs = std::filesystem;

namespace {
fs::path temp_file(const std::string& name) { return fs::temp_directory_path() / ("routepred_registry_" + name); }
}  // namespace

TEST_CASE("lookup and upsert") {
  Registry r;
  CHECK_FALSE(r.lookup(PlateText("ABC123")).has_value());

  r.upsert(VehicleRecord(PlateText("LEA2465"), 1));
  const auto hit = r.lookup(PlateText("LEA2465"));
  REQUIRE(hit.has_value());
  CHECK(hit->mobility_pattern == 1);
  CHECK(hit->plate.str() == "LEA2465");

  r.upsert(VehicleRecord(PlateText("LEA2465"), 0));
  CHECK(r.size() == 1);
  CHECK(r.lookup(PlateText("LEA2465"))->mobility_pattern == 0);

  for (int i = 0; i < 25; ++i) r.upsert(VehicleRecord(PlateText("V" + std::to_string(i)), i % 2));
  CHECK(r.size() == 26);

  CHECK(r.remove(PlateText("V3")));
  CHECK_FALSE(r.remove(PlateText("V3")));
  CHECK(r.size() == 25);

  CHECK_THROWS_AS(PlateText("abc123"), CharsetError);
  CHECK_THROWS_AS(VehicleRecord(PlateText("A1"), 2), InvalidParameter);
}

TEST_CASE("registry file format") {
  CHECK(Registry::parse("plate,mp\n").empty());
  CHECK(Registry::parse("plate,mp").empty());

  const auto r = Registry::parse("plate,mp\nLEA2465,1\nABC123,0\n");
  CHECK(r.size() == 2);
  CHECK(r.lookup(PlateText("ABC123"))->mobility_pattern == 0);
  // Canonical form sorts by plate.
  CHECK(r.serialize() == "plate,mp\nABC123,0\nLEA2465,1\n");

  auto expect_line = [](const std::string& content, std::size_t line) {
    try {
      Registry::parse(content);
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.line() == line);
    }
  };
  expect_line("plate,mp\nLEA2465,2\n", 2);
  expect_line("plate,mp\nABC,1\nlea2465,1\n", 3);
  expect_line("plate,mp\nABC,1,0\n", 2);
  expect_line("plate,mp\nABC,1 \n", 2);
  expect_line("plates,mp\n", 1);
  expect_line("", 1);
  CHECK_THROWS_AS(Registry::parse("plate,mp\nABC,1\nABC,0\n"), DuplicateKey);
}

TEST_CASE("save and load") {
  Registry r;
  Rng rng(12);
  for (int i = 0; i < 200; ++i) {
    std::string plate;
    const auto len = 1 + below(rng, 10);
    for (std::uint64_t j = 0; j < len; ++j) plate.push_back(kPlateCharset[below(rng, 36)]);
    r.upsert(VehicleRecord(PlateText(plate), static_cast<int>(below(rng, 2))));
  }
  const auto path = temp_file("roundtrip.csv");
  r.save(path);
  const auto first = text::read_file(path);
  CHECK(Registry::load(path) == r);
  r.save(path);
  CHECK(text::read_file(path) == first);
  CHECK(Registry::parse(r.serialize()).serialize() == r.serialize());
  fs::remove(path);

  CHECK_THROWS_AS(Registry::load(temp_file("does_not_exist.csv")), IoError);
}
