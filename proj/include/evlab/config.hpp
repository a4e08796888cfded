#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace evlab {

/// Thrown when a 0/1 word or block list cannot be turned into a configuration.
class ParseError : public std::invalid_argument {
 public:
  ParseError(const std::string& what, std::size_t position)
      : std::invalid_argument(what), position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

enum class PairKind : std::uint8_t { kTen, kOhOne };

/// An unlike adjacent pair, counted left to right within its kind.
/// Ten pairs run 0..N, oh-one pairs run 1..N.
struct PairIndex {
  PairKind kind = PairKind::kTen;
  std::int64_t j = 0;

  static constexpr PairIndex ten(std::int64_t j) { return {PairKind::kTen, j}; }
  static constexpr PairIndex oh_one(std::int64_t j) { return {PairKind::kOhOne, j}; }

  /// Position among all 2N+1 pairs, left to right: ten j -> 2j, oh-one j -> 2j-1.
  constexpr std::int64_t flat() const { return kind == PairKind::kTen ? 2 * j : 2 * j - 1; }
  static constexpr PairIndex from_flat(std::int64_t k) {
    return (k % 2 == 0) ? ten(k / 2) : oh_one((k + 1) / 2);
  }

  friend constexpr bool operator==(const PairIndex&, const PairIndex&) = default;
};

enum class VoterTarget : std::uint8_t { kZeros, kOnes };

struct LatticePoint {
  std::int64_t x = 0;
  std::int64_t y = 0;
  friend constexpr bool operator==(const LatticePoint&, const LatticePoint&) = default;
};

/// Right-down path from (0, T_1) to (R_N, 0); one point per step plus the start.
using StaircasePath = std::vector<LatticePoint>;

struct PrefixSums {
  std::vector<std::int64_t> R;  // R_i = n_1 + ... + n_i
  std::vector<std::int64_t> T;  // T_i = m_i + ... + m_N
};

struct PairInfo {
  PairIndex pair;
  /// Hybrid-zone position of the left particle; 0 means the left infinite block.
  std::int64_t left_site = 0;
  /// Staircase corner: (R_j, T_{j+1}) for a ten pair, (R_j, T_j) for an oh-one pair.
  LatticePoint corner;
};

/// A shock profile modulo translation: ...111 w 000... with w starting in 0
/// and ending in 1, stored as the run lengths (n_1, m_1, ..., n_N, m_N).
///
/// Internally the two infinite blocks are kept as sentinel runs at both ends,
/// so every unlike pair is the boundary between two adjacent runs.
class Configuration {
 public:
  /// The ground state ...111000...
  Configuration();

  static Configuration from_blocks(std::span<const std::int64_t> blocks);
  static Configuration from_blocks(std::initializer_list<std::int64_t> blocks) {
    return from_blocks(std::span<const std::int64_t>(blocks.begin(), blocks.size()));
  }
  /// Canonicalizes an arbitrary finite 0/1 word (leading 1's and trailing 0's are context).
  static Configuration from_string(std::string_view word);

  std::span<const std::int64_t> blocks() const {
    return {runs_.data() + 1, runs_.size() - 2};
  }
  std::int64_t n(std::int64_t i) const { return runs_[2 * i - 1]; }  // 1-based
  std::int64_t m(std::int64_t i) const { return runs_[2 * i]; }      // 1-based

  std::int64_t block_pairs() const { return static_cast<std::int64_t>(runs_.size() / 2 - 1); }
  std::int64_t size() const { return size_; }
  std::int64_t pair_count() const { return 2 * block_pairs() + 1; }
  bool is_ground() const { return runs_.size() == 2; }

  /// The hybrid-zone word, e.g. "01" for (1,1); empty for the ground state.
  std::string word() const;
  /// "...111" + word + "000..."
  std::string render() const;
  /// Comma-separated block lengths, empty for the ground state.
  std::string blocks_csv() const;

  friend bool operator==(const Configuration& a, const Configuration& b) { return a.runs_ == b.runs_; }
  friend std::strong_ordering operator<=>(const Configuration& a, const Configuration& b) {
    return a.runs_ <=> b.runs_;
  }

  std::size_t hash() const noexcept;

  friend Configuration apply_voter(Configuration s, PairIndex pair, VoterTarget target);
  friend Configuration apply_exclusion(Configuration s, PairIndex pair);

 private:
  static constexpr std::int64_t kInfinite = std::int64_t{1} << 60;

  bool is_sentinel(std::size_t r) const { return r == 0 || r + 1 == runs_.size(); }
  void check_pair(PairIndex pair) const;
  void add_to_run(std::size_t r, std::int64_t delta);
  void drop_empty_run(std::size_t r);
  void flip_last_of(std::size_t r);
  void flip_first_of(std::size_t r);
  void transpose_at(std::size_t boundary);

  std::vector<std::int64_t> runs_;
  std::int64_t size_ = 0;
};

/// The unlike particle of the pair adopts the type of its partner (target 00 or 11).
Configuration apply_voter(Configuration s, PairIndex pair, VoterTarget target);
/// The two particles of the pair exchange places.
Configuration apply_exclusion(Configuration s, PairIndex pair);

PrefixSums prefix_sums(const Configuration& s);
StaircasePath staircase_path(const Configuration& s);
std::vector<PairInfo> enumerate_pairs(const Configuration& s);

/// Every configuration with |S| <= max_size, ground state first, then by size.
std::vector<Configuration> enumerate_configurations(std::int64_t max_size);

/// Configuration (x, y): one 0-block of x sites and one 1-block of y sites.
/// Its largest inscribed rectangle is exactly x by y.
Configuration rectangle_configuration(std::int64_t x, std::int64_t y);

struct ConfigurationHash {
  std::size_t operator()(const Configuration& s) const noexcept { return s.hash(); }
};

}  // namespace evlab
