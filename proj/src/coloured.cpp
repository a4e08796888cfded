#include "evlab/coloured.hpp"

#include <map>
#include <stdexcept>

#include "evlab/lyapunov.hpp"

namespace evlab {

namespace {

std::vector<Particle> padded(const std::vector<Particle>& window, const Frame& frame) {
  std::vector<Particle> pw;
  pw.reserve(window.size() + 2);
  pw.push_back(frame.left);
  pw.insert(pw.end(), window.begin(), window.end());
  pw.push_back(frame.right);
  return pw;
}

// Positions i of the padded word where (i, i+1) is an unlike pair, left to right.
std::vector<std::size_t> unlike_pairs(const std::vector<Particle>& pw) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i + 1 < pw.size(); ++i) {
    if (pw[i].type != pw[i + 1].type) out.push_back(i);
  }
  return out;
}

void voter_on(std::vector<Particle>& pw, std::size_t i, std::uint8_t target) {
  const Particle x = pw[i], y = pw[i + 1];
  bool colour = x.coloured;
  if (x.coloured != y.coloured) {
    const Particle& marked = x.coloured ? x : y;
    colour = marked.type == target;
  }
  pw[i] = pw[i + 1] = Particle{target, colour};
}

// The context particles stay in: if a move changed one, it now belongs to the
// window, and trim() strips them again when they still match the frame.
ColouredConfiguration rebuild(std::vector<Particle> pw, const Frame& frame) {
  return ColouredConfiguration(std::move(pw), frame);
}

}  // namespace

ColouredConfiguration::ColouredConfiguration(std::vector<Particle> window, Frame frame)
    : window_(std::move(window)), frame_(frame) {
  for (const auto& p : window_) {
    if (p.type > 1) throw std::invalid_argument("particle type must be 0 or 1");
  }
  trim();
}

void ColouredConfiguration::trim() {
  std::size_t lo = 0, hi = window_.size();
  while (lo < hi && window_[lo] == frame_.left) ++lo;
  while (hi > lo && window_[hi - 1] == frame_.right) --hi;
  if (lo != 0 || hi != window_.size()) {
    window_ = std::vector<Particle>(window_.begin() + static_cast<std::ptrdiff_t>(lo),
                                    window_.begin() + static_cast<std::ptrdiff_t>(hi));
  }
}

ColouredConfiguration ColouredConfiguration::uncoloured(const Configuration& s) {
  std::vector<Particle> w;
  for (char c : s.word()) w.push_back({static_cast<std::uint8_t>(c - '0'), false});
  return ColouredConfiguration(std::move(w), Frame{});
}

ColouredConfiguration ColouredConfiguration::primed_ground_state() {
  return ColouredConfiguration({}, Frame{{0, true}, {1, true}});
}

Configuration ColouredConfiguration::base() const {
  if (!standard_frame()) throw std::logic_error("base() is defined in the standard frame only");
  std::string w;
  w.reserve(window_.size());
  for (const auto& p : window_) w.push_back(static_cast<char>('0' + p.type));
  return Configuration::from_string(w);
}

std::vector<bool> ColouredConfiguration::mask() const {
  if (!standard_frame()) throw std::logic_error("mask() is defined in the standard frame only");
  std::size_t lo = 0, hi = window_.size();
  while (lo < hi && window_[lo].type == 1) ++lo;
  while (hi > lo && window_[hi - 1].type == 0) --hi;
  std::vector<bool> out;
  for (std::size_t i = lo; i < hi; ++i) out.push_back(window_[i].coloured);
  return out;
}

std::int64_t ColouredConfiguration::chi() const {
  std::int64_t n = 0;
  for (const auto& p : window_) n += p.coloured ? 1 : 0;
  return n;
}

std::int64_t ColouredConfiguration::pair_count() const {
  return static_cast<std::int64_t>(unlike_pairs(padded(window_, frame_)).size());
}

std::string ColouredConfiguration::key() const {
  std::string k;
  k.reserve(window_.size() + 4);
  auto code = [](const Particle& p) { return p.coloured ? static_cast<char>('a' + p.type) : static_cast<char>('0' + p.type); };
  k += code(frame_.left);
  k += '|';
  for (const auto& p : window_) k += code(p);
  k += '|';
  k += code(frame_.right);
  return k;
}

ColouredConfiguration initial_colouring(const Configuration& s0) {
  if (s0.is_ground()) throw std::domain_error("initial colouring needs a configuration other than the ground state");
  const auto rect = g_rect(s0);
  std::int64_t h = rect.X;
  for (std::int64_t i = 1; i < rect.K; ++i) h += s0.m(i);
  const auto w = s0.word();
  std::vector<Particle> window;
  window.reserve(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) {
    const auto type = static_cast<std::uint8_t>(w[i] - '0');
    const bool left_of_cut = static_cast<std::int64_t>(i) < h;
    window.push_back({type, type == 0 ? left_of_cut : !left_of_cut});
  }
  return ColouredConfiguration(std::move(window), Frame{});
}

ColouredConfiguration apply_event(const ColouredConfiguration& x, const Event& e, const Params& params) {
  auto pw = padded(x.window_, x.frame_);
  const auto pairs = unlike_pairs(pw);
  const auto k = static_cast<std::size_t>(e.pair.flat());
  if (k >= pairs.size()) throw std::out_of_range("pair index out of range for coloured configuration");
  const auto i = pairs[k];
  if (e.kind == MoveKind::kVoter) {
    voter_on(pw, i, voter_target(e.coin) == VoterTarget::kZeros ? 0 : 1);
  } else {
    const auto kind = pw[i].type == 1 ? PairKind::kTen : PairKind::kOhOne;
    if (!exclusion_accepted(kind, e.coin, params)) return x;
    std::swap(pw[i], pw[i + 1]);
  }
  return rebuild(std::move(pw), x.frame_);
}

ColouredConfiguration coloured_step(const ColouredConfiguration& x, const Params& params, Rng& rng) {
  return apply_event(x, draw_event(x.pair_count(), params, rng), params);
}

std::vector<std::pair<ColouredConfiguration, Rational>> coloured_step_law(const ColouredConfiguration& x,
                                                                        const ExactParams& params) {
  validate(params);
  const auto pw = padded(x.window_, x.frame_);
  const auto pairs = unlike_pairs(pw);
  const Rational count(static_cast<long>(pairs.size()));
  const Rational voter_mass = params.beta / (2 * count);
  const Rational exclusion_mass = (1 - params.beta) / count;

  std::map<std::string, std::pair<ColouredConfiguration, Rational>> merged;
  auto add = [&merged](ColouredConfiguration c, const Rational& w) {
    if (w == 0) return;
    auto key = c.key();
    auto it = merged.find(key);
    if (it == merged.end()) {
      merged.emplace(std::move(key), std::make_pair(std::move(c), w));
    } else {
      it->second.second += w;
    }
  };

  for (const auto i : pairs) {
    for (std::uint8_t target : {std::uint8_t{0}, std::uint8_t{1}}) {
      auto next = pw;
      voter_on(next, i, target);
      add(rebuild(std::move(next), x.frame_), voter_mass);
    }
    const Rational accept = pw[i].type == 1 ? Rational(1 - params.p) : params.p;
    auto swapped = pw;
    std::swap(swapped[i], swapped[i + 1]);
    add(rebuild(std::move(swapped), x.frame_), exclusion_mass * accept);
    add(x, exclusion_mass * (1 - accept));
  }

  std::vector<std::pair<ColouredConfiguration, Rational>> out;
  out.reserve(merged.size());
  for (auto& [key, entry] : merged) {
    entry.second.canonicalize();
    out.push_back(std::move(entry));
  }
  return out;
}

OverlapSegment zeta(const ColouredConfiguration& x) {
  const auto pw = padded(x.window(), x.frame());
  // Context particles stand in for their whole infinite block.
  std::ptrdiff_t left = -1, right = -1;
  for (std::size_t i = 0; i < pw.size(); ++i) {
    if (pw[i].coloured && pw[i].type == 1 && left < 0) left = static_cast<std::ptrdiff_t>(i);
    if (pw[i].coloured && pw[i].type == 0) right = static_cast<std::ptrdiff_t>(i);
  }
  OverlapSegment seg;
  if (left < 0 || right < 0 || left >= right) return seg;
  if (left == 0 || right + 1 == static_cast<std::ptrdiff_t>(pw.size())) {
    throw std::logic_error("overlap segment is unbounded");
  }
  seg.holding = false;
  for (auto i = left; i <= right; ++i) seg.word.push_back(static_cast<char>('0' + pw[static_cast<std::size_t>(i)].type));
  return seg;
}

bool ground_state_obstruction(const ColouredConfiguration& x) {
  bool coloured_zero_seen = x.frame().left.coloured && x.frame().left.type == 0;
  for (const auto& p : x.window()) {
    if (p.coloured && p.type == 1 && coloured_zero_seen) return true;
    if (p.coloured && p.type == 0) coloured_zero_seen = true;
  }
  return coloured_zero_seen && x.frame().right.coloured && x.frame().right.type == 1;
}

bool ordering_holds(const ColouredConfiguration& x) {
  const auto pw = padded(x.window(), x.frame());
  bool coloured_one_seen = false;
  for (const auto& p : pw) {
    if (p.type == 1 && p.coloured) coloured_one_seen = true;
    if (p.type == 1 && !p.coloured && coloured_one_seen) return false;
  }
  bool coloured_zero_seen = false;
  for (auto it = pw.rbegin(); it != pw.rend(); ++it) {
    if (it->type == 0 && it->coloured) coloured_zero_seen = true;
    if (it->type == 0 && !it->coloured && coloured_zero_seen) return false;
  }
  return true;
}

}  // namespace evlab
