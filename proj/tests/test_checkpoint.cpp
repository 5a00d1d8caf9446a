#include <doctest.h>

#include "sigmabias/checkpoint.hpp"
#include "sigmabias/errors.hpp"
#include "sigmabias/version.hpp"

using namespace sigmabias;

namespace {

EnumCheckpoint sample_state() {
  EnumCheckpoint state;
  state.key = {kVersion, 30, 5, 120, 1, 1000, "exact"};
  state.completed.push_back({30, 4, 3, make_rational(7, 15), make_rational(2, 9)});
  state.completed.push_back({60, 2, 2, make_rational(-1, 4), BigRational(0)});
  return state;
}

}  // namespace

TEST_CASE("checkpoint serialize/parse round trip is identity") {
  const EnumCheckpoint empty{{kVersion, 2, 5, 10, 1, 100, "fast"}, {}};
  CHECK(parse_checkpoint(serialize_checkpoint(empty)) == empty);

  const EnumCheckpoint state = sample_state();
  const std::string text = serialize_checkpoint(state);
  CHECK(parse_checkpoint(text) == state);
  // bit-exact second serialization
  CHECK(serialize_checkpoint(parse_checkpoint(text)) == text);
}

TEST_CASE("checkpoint rejects malformed input") {
  CHECK_THROWS_AS(parse_checkpoint(""), CheckpointError);
  CHECK_THROWS_AS(parse_checkpoint("bogus header\n"), CheckpointError);
  const std::string good = serialize_checkpoint(sample_state());
  CHECK_THROWS_AS(parse_checkpoint(good + "b 90 1\n"), CheckpointError);       // short line
  CHECK_THROWS_AS(parse_checkpoint(good + "b 90 1 1 x/0 0/1\n"), CheckpointError);
}

TEST_CASE("checkpoint keys with any differing field do not match") {
  const CheckpointKey base{kVersion, 30, 5, 120, 1, 1000, "exact"};
  CheckpointKey other = base;
  CHECK(base == other);
  other.smooth_y = 7;
  CHECK_FALSE(base == other);
  other = base;
  other.mode = "fast";
  CHECK_FALSE(base == other);
  other = base;
  other.version = "0.0.0";
  CHECK_FALSE(base == other);
}
