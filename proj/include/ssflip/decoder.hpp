#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

#include "ssflip/code.hpp"

namespace ssflip {

// A flip pattern inside one generator's support. `mask` selects positions
// of the generator's sorted support list (bit i = i-th support qubit).
// decrease = |s| - |s ^ syndrome(flip)|; size = popcount(mask).
struct FlipCandidate {
  uint32_t generator = 0;
  uint32_t mask = 0;
  int32_t decrease = 0;
  uint32_t size = 0;
};

// Ordering used everywhere a flip is chosen: larger decrease/size ratio
// first (exact, by cross-multiplication), then larger decrease, then lower
// generator row id, then smaller mask value.
bool flip_preferred(const FlipCandidate& a, const FlipCandidate& b);

// Expands a candidate's mask into flat qubit ids.
std::vector<uint32_t> flip_qubits(const CssCode& c, PauliSide side, const FlipCandidate& f);

struct TraceStep {
  uint32_t generator = 0;
  std::vector<uint32_t> flipped;  // flat qubit ids
  uint32_t weight_before = 0;
  uint32_t weight_after = 0;
};

struct DecodeResult {
  bool success = false;
  Gf2Vector correction;
  uint32_t iterations = 0;
  std::vector<TraceStep> trace;  // filled only when tracing is on
  uint32_t residual_syndrome_weight = 0;
  // Instrumentation
  uint64_t generator_evaluations = 0;
  uint64_t sum_flip_sizes = 0;
};

// Best strictly-improving flip inside one generator, over all
// 2^(delta_a+delta_b)-1 nonempty subsets of its support; nullopt if no
// subset strictly decreases the syndrome weight.
std::optional<FlipCandidate> best_flip_in_generator(const CssCode& c, const Gf2Vector& s,
                                                    uint32_t generator, PauliSide side);

// Small-set-flip decoding loop. Per iteration the globally best candidate
// (per flip_preferred) is applied; the syndrome weight strictly decreases,
// so the loop terminates within |s| iterations. Candidates are cached per
// generator and only generators touching a changed syndrome bit are
// re-evaluated; with `incremental` off, every generator is rescanned each
// iteration instead (identical flip sequence, used as a shadow oracle).
//
// One decoder instance owns mutable working state; use one per thread.
class SmallSetFlipDecoder {
 public:
  struct Options {
    bool incremental = true;
    bool record_trace = false;
  };

  SmallSetFlipDecoder(const CssCode& code, PauliSide side, Options options);
  SmallSetFlipDecoder(const CssCode& code, PauliSide side)
      : SmallSetFlipDecoder(code, side, Options{}) {}

  DecodeResult decode(const Gf2Vector& syndrome);

  const CssCode& code() const { return code_; }
  PauliSide side() const { return side_; }

  // Test hook: candidates currently cached for every generator, in the
  // state left behind by the last decode() call.
  const std::vector<std::optional<FlipCandidate>>& cached_candidates() const {
    return candidates_;
  }

 private:
  struct LocalBits {
    uint64_t lo = 0, hi = 0;
    void flip(uint32_t i) { (i < 64 ? lo : hi) ^= 1ull << (i & 63); }
    LocalBits operator^(const LocalBits& o) const { return {lo ^ o.lo, hi ^ o.hi}; }
    int popcount() const { return std::popcount(lo) + std::popcount(hi); }
    bool any() const { return lo | hi; }
  };

  std::optional<FlipCandidate> evaluate_generator(uint32_t gen);
  void set_candidate(uint32_t gen, const std::optional<FlipCandidate>& cand);
  void apply_flip(const FlipCandidate& f, DecodeResult& result);
  std::optional<uint32_t> pick_best_generator() const;
  void mark_dirty_from_changed_checks(std::vector<uint32_t>& dirty);
  uint32_t bucket_index(int32_t decrease, uint32_t size) const {
    if (decrease < 1 || static_cast<uint32_t>(decrease) > max_decrease_ || size < 1 ||
        size > max_size_)
      throw std::logic_error("decoder: flip candidate outside the key space");
    return bucket_rank_[static_cast<uint32_t>(decrease - 1) * max_size_ + (size - 1)];
  }

  const CssCode& code_;
  PauliSide side_;
  Options options_;
  const Gf2SparseMatrix& syn_mat_;  // rows = checks of this side
  const Gf2SparseMatrix& gen_mat_;  // rows = flip-eligible generators

  uint32_t max_size_ = 0;      // delta_a + delta_b
  uint32_t max_decrease_ = 0;  // delta_a * delta_b

  // Bucket priority structure over (decrease, size) keys, ordered by the
  // exact ratio then decrease. buckets_[r] holds generator ids.
  std::vector<uint32_t> bucket_rank_;
  std::vector<std::set<uint32_t>> buckets_;
  std::vector<std::optional<FlipCandidate>> candidates_;
  std::vector<int32_t> bucket_of_gen_;

  // Working state for one decode run.
  Gf2Vector s_;
  uint32_t s_weight_ = 0;
  std::vector<uint32_t> check_stamp_, gen_stamp_;
  std::vector<uint32_t> toggled_checks_;
  std::vector<uint32_t> toggle_count_;
  uint32_t epoch_ = 0;
  // Scratch for evaluate_generator.
  std::vector<uint32_t> local_check_ids_;
  std::vector<uint32_t> local_of_check_;
  std::vector<uint32_t> local_check_stamp_;
  uint32_t local_epoch_ = 0;
  std::vector<LocalBits> qubit_masks_;

  uint64_t generator_evaluations_ = 0;
};

// One decoding pass for the given side.
DecodeResult decode_side(const CssCode& c, const Gf2Vector& s, PauliSide side,
                         bool trace_on = false);

// Full decoder: X and Z are handled independently.
std::pair<DecodeResult, DecodeResult> decode(const CssCode& c, const Gf2Vector& s_x,
                                             const Gf2Vector& s_z);

}  // namespace ssflip
