#include "doctest.h"

#include "carleson/calibration.hpp"
#include "carleson/errors.hpp"

using namespace carleson;

TEST_CASE("parse") {
  const Calibration c = Calibration::parse("# comment\nversion 3\n\nfoo 0.5 2   # trailing\nbar.baz 1 1\n");
  CHECK(c.version() == 3);
  CHECK(c.has("foo"));
  CHECK(c.band("foo").lo == 0.5);
  CHECK(c.band("foo").hi == 2.0);
  CHECK(c.band("bar.baz").contains(1.0));
  CHECK_THROWS_AS(c.band("missing"), DomainError);
}

TEST_CASE("malformed tables") {
  CHECK_THROWS_AS(Calibration::parse("foo 1 2\n"), ParseError);
  CHECK_THROWS_AS(Calibration::parse("version 1\nfoo 2 1\n"), ParseError);
  CHECK_THROWS_AS(Calibration::parse("version 1\nfoo 1\n"), ParseError);
  CHECK_THROWS_AS(Calibration::parse("version 1\nfoo 1 2\nfoo 1 2\n"), ParseError);
}

TEST_CASE("builtin table") {
  const Calibration& c = Calibration::builtin();
  CHECK(c.version() >= 1);
  for (const char* id : {"pi.SubTwo", "pi.LowR", "pi.MidR", "pi.HighR"}) {
    REQUIRE(c.has(id));
    CHECK(c.band(id).lo <= 1.0);
    CHECK(c.band(id).hi >= 1.0);
  }
}

TEST_CASE("slack") {
  const Band b{1.0, 2.0};
  CHECK(!b.contains(2.2));
  CHECK(b.contains_with_slack(2.2, 0.2));
  CHECK(b.contains_with_slack(0.85, 0.2));
  CHECK(!b.contains_with_slack(0.8, 0.2));
}

TEST_CASE("compiled-in table matches the data file") {
  const Calibration file = Calibration::load(CARLESON_DATA_DIR "/calibration.txt");
  const Calibration& builtin = Calibration::builtin();
  CHECK(file.version() == builtin.version());
  REQUIRE(file.bands().size() == builtin.bands().size());
  for (const auto& [id, band] : file.bands()) {
    REQUIRE(builtin.has(id));
    CHECK(builtin.band(id).lo == band.lo);
    CHECK(builtin.band(id).hi == band.hi);
  }
}
