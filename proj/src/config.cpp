#include "evlab/config.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace evlab {

Configuration::Configuration() : runs_{kInfinite, kInfinite} {}

Configuration Configuration::from_blocks(std::span<const std::int64_t> blocks) {
  if (blocks.size() % 2 != 0) {
    throw ParseError("block sequence has odd length " + std::to_string(blocks.size()),
                     blocks.size());
  }
  Configuration s;
  s.runs_.clear();
  s.runs_.reserve(blocks.size() + 2);
  s.runs_.push_back(kInfinite);
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    if (blocks[i] < 1) {
      throw ParseError("block " + std::to_string(i) + " has non-positive length " +
                           std::to_string(blocks[i]),
                       i);
    }
    if (blocks[i] >= kInfinite) {
      throw ParseError("block " + std::to_string(i) + " is too long", i);
    }
    s.runs_.push_back(blocks[i]);
    s.size_ += blocks[i];
  }
  s.runs_.push_back(kInfinite);
  return s;
}

Configuration Configuration::from_string(std::string_view word) {
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (word[i] != '0' && word[i] != '1') {
      throw ParseError(std::string("invalid character '") + word[i] + "' at position " +
                           std::to_string(i),
                       i);
    }
  }
  const auto first = word.find('0');
  if (first == std::string_view::npos) return {};
  const auto last = word.rfind('1');
  if (last == std::string_view::npos || last < first) return {};

  std::vector<std::int64_t> blocks;
  char current = '0';
  std::int64_t run = 0;
  for (std::size_t i = first; i <= last; ++i) {
    if (word[i] == current) {
      ++run;
    } else {
      blocks.push_back(run);
      current = word[i];
      run = 1;
    }
  }
  blocks.push_back(run);
  return from_blocks(blocks);
}

std::string Configuration::word() const {
  std::string w;
  w.reserve(static_cast<std::size_t>(size_));
  const auto b = blocks();
  for (std::size_t i = 0; i < b.size(); ++i) w.append(static_cast<std::size_t>(b[i]), i % 2 == 0 ? '0' : '1');
  return w;
}

std::string Configuration::render() const { return "...111" + word() + "000..."; }

std::string Configuration::blocks_csv() const {
  std::ostringstream os;
  const auto b = blocks();
  for (std::size_t i = 0; i < b.size(); ++i) {
    if (i) os << ',';
    os << b[i];
  }
  return os.str();
}

std::size_t Configuration::hash() const noexcept {
  std::size_t h = 0x9e3779b97f4a7c15ULL;
  for (std::size_t i = 1; i + 1 < runs_.size(); ++i) {
    h ^= static_cast<std::size_t>(runs_[i]) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

void Configuration::check_pair(PairIndex pair) const {
  const auto n = block_pairs();
  const bool ok = pair.kind == PairKind::kTen ? (pair.j >= 0 && pair.j <= n) : (pair.j >= 1 && pair.j <= n);
  if (!ok) {
    throw std::out_of_range(std::string(pair.kind == PairKind::kTen ? "ten" : "oh-one") +
                            " pair " + std::to_string(pair.j) + " does not exist in a configuration with N=" +
                            std::to_string(n));
  }
}

void Configuration::add_to_run(std::size_t r, std::int64_t delta) {
  if (is_sentinel(r)) return;  // the infinite blocks absorb any change
  runs_[r] += delta;
  size_ += delta;
}

// Removes the empty run r by fusing its two neighbours, which hold the same particle type.
void Configuration::drop_empty_run(std::size_t r) {
  const bool into_sentinel = (r - 1 == 0) || (r + 2 == runs_.size());
  if (into_sentinel) {
    // whichever neighbour is finite disappears into the infinite block
    if (r - 1 != 0) size_ -= runs_[r - 1];
    if (r + 2 != runs_.size()) size_ -= runs_[r + 1];
    runs_[r - 1] = kInfinite;
  } else {
    runs_[r - 1] += runs_[r + 1];
  }
  runs_.erase(runs_.begin() + static_cast<std::ptrdiff_t>(r), runs_.begin() + static_cast<std::ptrdiff_t>(r + 2));
}

void Configuration::flip_last_of(std::size_t r) {
  add_to_run(r, -1);
  add_to_run(r + 1, +1);
  if (!is_sentinel(r) && runs_[r] == 0) drop_empty_run(r);
}

void Configuration::flip_first_of(std::size_t r) {
  add_to_run(r, -1);
  add_to_run(r - 1, +1);
  if (!is_sentinel(r) && runs_[r] == 0) drop_empty_run(r);
}

// Swaps the last particle of run b with the first particle of run b+1:
// [.., A, B, ..] -> [.., A-1, 1, 1, B-1, ..], then empty runs are fused away.
void Configuration::transpose_at(std::size_t b) {
  add_to_run(b, -1);
  add_to_run(b + 1, -1);
  runs_.insert(runs_.begin() + static_cast<std::ptrdiff_t>(b + 1), {1, 1});
  size_ += 2;
  // Right side first so the left index stays valid.
  if (!is_sentinel(b + 3) && runs_[b + 3] == 0) drop_empty_run(b + 3);
  if (!is_sentinel(b) && runs_[b] == 0) drop_empty_run(b);
}

Configuration apply_voter(Configuration s, PairIndex pair, VoterTarget target) {
  s.check_pair(pair);
  const auto b = static_cast<std::size_t>(pair.flat());
  // Run b is a 1-run when b is even (pair "10"), a 0-run when odd (pair "01").
  const bool left_is_one = (b % 2 == 0);
  const bool want_ones = (target == VoterTarget::kOnes);
  if (left_is_one == want_ones) {
    s.flip_first_of(b + 1);  // the right particle adopts the left type
  } else {
    s.flip_last_of(b);
  }
  return s;
}

Configuration apply_exclusion(Configuration s, PairIndex pair) {
  s.check_pair(pair);
  s.transpose_at(static_cast<std::size_t>(pair.flat()));
  return s;
}

PrefixSums prefix_sums(const Configuration& s) {
  const auto n = s.block_pairs();
  PrefixSums out;
  out.R.resize(static_cast<std::size_t>(n));
  out.T.resize(static_cast<std::size_t>(n));
  std::int64_t acc = 0;
  for (std::int64_t i = 1; i <= n; ++i) out.R[static_cast<std::size_t>(i - 1)] = acc += s.n(i);
  acc = 0;
  for (std::int64_t i = n; i >= 1; --i) out.T[static_cast<std::size_t>(i - 1)] = acc += s.m(i);
  return out;
}

StaircasePath staircase_path(const Configuration& s) {
  StaircasePath path;
  if (s.is_ground()) return path;
  const auto [R, T] = prefix_sums(s);
  path.reserve(static_cast<std::size_t>(s.size() + 1));
  LatticePoint p{0, T.front()};
  path.push_back(p);
  for (std::int64_t i = 1; i <= s.block_pairs(); ++i) {
    for (std::int64_t k = 0; k < s.n(i); ++k) path.push_back(p = {p.x + 1, p.y});
    for (std::int64_t k = 0; k < s.m(i); ++k) path.push_back(p = {p.x, p.y - 1});
  }
  return path;
}

std::vector<PairInfo> enumerate_pairs(const Configuration& s) {
  const auto n = s.block_pairs();
  const auto [R, T] = prefix_sums(s);
  auto r_at = [&](std::int64_t i) { return i == 0 ? 0 : R[static_cast<std::size_t>(i - 1)]; };
  auto t_at = [&](std::int64_t i) { return i == n + 1 ? 0 : T[static_cast<std::size_t>(i - 1)]; };

  std::vector<PairInfo> out;
  out.reserve(static_cast<std::size_t>(2 * n + 1));
  std::int64_t site = 0;  // position of the last particle of the run left of the pair
  const auto b = s.blocks();
  for (std::int64_t k = 0; k <= 2 * n; ++k) {
    const auto pair = PairIndex::from_flat(k);
    const LatticePoint corner = pair.kind == PairKind::kTen ? LatticePoint{r_at(pair.j), t_at(pair.j + 1)}
                                                            : LatticePoint{r_at(pair.j), t_at(pair.j)};
    out.push_back({pair, site, corner});
    if (k < 2 * n) site += b[static_cast<std::size_t>(k)];
  }
  return out;
}

std::vector<Configuration> enumerate_configurations(std::int64_t max_size) {
  std::vector<Configuration> out{Configuration{}};
  for (std::int64_t len = 2; len <= max_size; ++len) {
    const std::int64_t interior = len - 2;
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << interior); ++bits) {
      std::string w(static_cast<std::size_t>(len), '0');
      w.back() = '1';
      for (std::int64_t i = 0; i < interior; ++i) {
        if ((bits >> (interior - 1 - i)) & 1U) w[static_cast<std::size_t>(i + 1)] = '1';
      }
      out.push_back(Configuration::from_string(w));
    }
  }
  return out;
}

Configuration rectangle_configuration(std::int64_t x, std::int64_t y) {
  if (x < 1 || y < 1) throw std::invalid_argument("rectangle sides must be positive");
  return Configuration::from_blocks({x, y});
}

}  // namespace evlab
