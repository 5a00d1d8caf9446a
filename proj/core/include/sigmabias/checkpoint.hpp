#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "sigmabias/rational.hpp"

namespace sigmabias {

// Identifies the run a checkpoint belongs to.  Every field must match for a
// resume to be accepted.
struct CheckpointKey {
  std::string version;
  std::uint64_t modulus = 0;
  std::uint64_t smooth_y = 0;
  std::uint64_t cap = 0;
  unsigned exponent = 1;
  std::uint64_t zeta_terms = 0;
  std::string mode;  // "exact" or "fast"
  friend bool operator==(const CheckpointKey&, const CheckpointKey&) = default;
};

// Aggregate over all pairs of one completed b value.  In exact mode u and v
// are the two partial sums the bound is assembled from; in fast mode u is the
// floor-scaled saving (an exact rational with power-of-two denominator) and
// v is 0.
struct BPartial {
  std::uint64_t b = 0;
  std::uint64_t pairs = 0;
  std::uint64_t valid = 0;
  BigRational u = 0;
  BigRational v = 0;
  friend bool operator==(const BPartial&, const BPartial&) = default;
};

struct EnumCheckpoint {
  CheckpointKey key;
  std::vector<BPartial> completed;  // in completion order, not sorted
  friend bool operator==(const EnumCheckpoint&, const EnumCheckpoint&) = default;
};

std::string checkpoint_header_line(const CheckpointKey& key);
std::string checkpoint_data_line(const BPartial& line);

std::string serialize_checkpoint(const EnumCheckpoint& state);

// Inverse of serialize_checkpoint.  Throws CheckpointError on malformed
// input.  Deserialize-serialize is bit-identical.
EnumCheckpoint parse_checkpoint(const std::string& text);

EnumCheckpoint load_checkpoint_file(const std::filesystem::path& path);

}  // namespace sigmabias
