#include "ssflip/decoder.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace ssflip {

bool flip_preferred(const FlipCandidate& a, const FlipCandidate& b) {
  const int64_t lhs = static_cast<int64_t>(a.decrease) * b.size;
  const int64_t rhs = static_cast<int64_t>(b.decrease) * a.size;
  if (lhs != rhs) return lhs > rhs;
  if (a.decrease != b.decrease) return a.decrease > b.decrease;
  if (a.generator != b.generator) return a.generator < b.generator;
  return a.mask < b.mask;
}

std::vector<uint32_t> flip_qubits(const CssCode& c, PauliSide side, const FlipCandidate& f) {
  const auto& support = c.generator_matrix(side).row(f.generator);
  std::vector<uint32_t> out;
  out.reserve(f.size);
  for (uint32_t m = f.mask; m; m &= m - 1)
    out.push_back(support[static_cast<uint32_t>(std::countr_zero(m))]);
  return out;
}

std::optional<FlipCandidate> best_flip_in_generator(const CssCode& c, const Gf2Vector& s,
                                                    uint32_t generator, PauliSide side) {
  const Gf2SparseMatrix& syn_mat = c.syndrome_matrix(side);
  const Gf2SparseMatrix& gen_mat = c.generator_matrix(side);
  if (generator >= gen_mat.rows())
    throw std::invalid_argument("best_flip_in_generator: generator id out of range");
  if (s.size() != syn_mat.rows())
    throw std::invalid_argument("best_flip_in_generator: syndrome length mismatch");

  const auto& support = gen_mat.row(generator);
  const uint32_t w = static_cast<uint32_t>(support.size());

  // Checks reachable from the support, with local ids.
  std::vector<uint32_t> checks;
  std::vector<int32_t> local(syn_mat.rows(), -1);
  for (uint32_t q : support) {
    for (uint32_t chk : syn_mat.col(q)) {
      if (local[chk] < 0) {
        local[chk] = static_cast<int32_t>(checks.size());
        checks.push_back(chk);
      }
    }
  }

  std::optional<FlipCandidate> best;
  std::vector<uint32_t> toggles(checks.size());
  for (uint32_t mask = 1; mask < (1u << w); ++mask) {
    std::fill(toggles.begin(), toggles.end(), 0);
    for (uint32_t m = mask; m; m &= m - 1) {
      const uint32_t q = support[static_cast<uint32_t>(std::countr_zero(m))];
      for (uint32_t chk : syn_mat.col(q)) toggles[static_cast<size_t>(local[chk])]++;
    }
    int32_t decrease = 0;
    for (size_t i = 0; i < checks.size(); ++i) {
      if (toggles[i] & 1) decrease += s.get(checks[i]) ? 1 : -1;
    }
    if (decrease < 1) continue;
    const FlipCandidate cand{generator, mask, decrease,
                             static_cast<uint32_t>(std::popcount(mask))};
    if (!best || flip_preferred(cand, *best)) best = cand;
  }
  return best;
}

SmallSetFlipDecoder::SmallSetFlipDecoder(const CssCode& code, PauliSide side, Options options)
    : code_(code),
      side_(side),
      options_(options),
      syn_mat_(code.syndrome_matrix(side)),
      gen_mat_(code.generator_matrix(side)) {
  max_size_ = code.row_weight();
  max_decrease_ = code.delta_a() * code.delta_b();

  // Rank all (decrease, size) keys by ratio, then decrease. Keys with
  // equal ratio and equal decrease have equal size, so the order is total.
  struct Key {
    uint32_t decrease, size;
  };
  std::vector<Key> keys;
  keys.reserve(max_decrease_ * max_size_);
  for (uint32_t d = 1; d <= max_decrease_; ++d)
    for (uint32_t s = 1; s <= max_size_; ++s) keys.push_back({d, s});
  std::sort(keys.begin(), keys.end(), [](const Key& a, const Key& b) {
    const uint64_t lhs = static_cast<uint64_t>(a.decrease) * b.size;
    const uint64_t rhs = static_cast<uint64_t>(b.decrease) * a.size;
    if (lhs != rhs) return lhs > rhs;
    return a.decrease > b.decrease;
  });
  bucket_rank_.assign(max_decrease_ * max_size_, 0);
  for (uint32_t r = 0; r < keys.size(); ++r)
    bucket_rank_[(keys[r].decrease - 1) * max_size_ + (keys[r].size - 1)] = r;
  buckets_.assign(keys.size(), {});

  candidates_.assign(gen_mat_.rows(), std::nullopt);
  bucket_of_gen_.assign(gen_mat_.rows(), -1);
  check_stamp_.assign(syn_mat_.rows(), 0);
  gen_stamp_.assign(gen_mat_.rows(), 0);
  toggle_count_.assign(syn_mat_.rows(), 0);
  local_of_check_.assign(syn_mat_.rows(), 0);
  local_check_stamp_.assign(syn_mat_.rows(), 0);
}

std::optional<FlipCandidate> SmallSetFlipDecoder::evaluate_generator(uint32_t gen) {
  ++generator_evaluations_;
  const auto& support = gen_mat_.row(gen);
  const uint32_t w = static_cast<uint32_t>(support.size());

  local_check_ids_.clear();
  ++local_epoch_;
  qubit_masks_.assign(w, LocalBits{});
  LocalBits local_syndrome{};
  for (uint32_t pos = 0; pos < w; ++pos) {
    const uint32_t q = support[pos];
    for (uint32_t chk : syn_mat_.col(q)) {
      if (local_check_stamp_[chk] != local_epoch_) {
        local_check_stamp_[chk] = local_epoch_;
        local_of_check_[chk] = static_cast<uint32_t>(local_check_ids_.size());
        local_check_ids_.push_back(chk);
        if (s_.get(chk)) local_syndrome.flip(local_of_check_[chk]);
      }
      qubit_masks_[pos].flip(local_of_check_[chk]);
    }
  }
  if (!local_syndrome.any()) return std::nullopt;  // nothing to improve here
  if (local_check_ids_.size() > 128)
    throw std::logic_error("flip search: generator touches more than 128 checks");

  const int32_t base = local_syndrome.popcount();
  std::optional<FlipCandidate> best;
  LocalBits toggled{};
  // Gray-code walk over the 2^w - 1 nonempty subsets; one XOR per step.
  for (uint32_t i = 1; i < (1u << w); ++i) {
    const uint32_t gray = i ^ (i >> 1);
    toggled = toggled ^ qubit_masks_[static_cast<uint32_t>(std::countr_zero(i))];
    const int32_t decrease = base - (local_syndrome ^ toggled).popcount();
    if (decrease < 1) continue;
    const FlipCandidate cand{gen, gray, decrease, static_cast<uint32_t>(std::popcount(gray))};
    if (!best || flip_preferred(cand, *best)) best = cand;
  }
  return best;
}

void SmallSetFlipDecoder::set_candidate(uint32_t gen, const std::optional<FlipCandidate>& cand) {
  if (bucket_of_gen_[gen] >= 0) {
    buckets_[static_cast<uint32_t>(bucket_of_gen_[gen])].erase(gen);
    bucket_of_gen_[gen] = -1;
  }
  candidates_[gen] = cand;
  if (cand) {
    const uint32_t idx = bucket_index(cand->decrease, cand->size);
    buckets_[idx].insert(gen);
    bucket_of_gen_[gen] = static_cast<int32_t>(idx);
  }
}

std::optional<uint32_t> SmallSetFlipDecoder::pick_best_generator() const {
  for (const auto& bucket : buckets_) {
    if (!bucket.empty()) return *bucket.begin();
  }
  return std::nullopt;
}

void SmallSetFlipDecoder::apply_flip(const FlipCandidate& f, DecodeResult& result) {
  const auto& support = gen_mat_.row(f.generator);
  toggled_checks_.clear();
  for (uint32_t m = f.mask; m; m &= m - 1) {
    const uint32_t q = support[static_cast<uint32_t>(std::countr_zero(m))];
    result.correction.flip(q);
    for (uint32_t chk : syn_mat_.col(q)) {
      if (toggle_count_[chk] == 0) toggled_checks_.push_back(chk);
      toggle_count_[chk]++;
    }
  }
  // Keep only checks whose value actually changed.
  size_t kept = 0;
  for (uint32_t chk : toggled_checks_) {
    const bool changed = toggle_count_[chk] & 1;
    toggle_count_[chk] = 0;
    if (!changed) continue;
    toggled_checks_[kept++] = chk;
    if (s_.get(chk)) {
      s_.set(chk, false);
      --s_weight_;
    } else {
      s_.set(chk, true);
      ++s_weight_;
    }
  }
  toggled_checks_.resize(kept);
}

void SmallSetFlipDecoder::mark_dirty_from_changed_checks(std::vector<uint32_t>& dirty) {
  dirty.clear();
  ++epoch_;
  for (uint32_t chk : toggled_checks_) {
    for (uint32_t q : syn_mat_.row(chk)) {
      for (uint32_t g : gen_mat_.col(q)) {
        if (gen_stamp_[g] != epoch_) {
          gen_stamp_[g] = epoch_;
          dirty.push_back(g);
        }
      }
    }
  }
}

DecodeResult SmallSetFlipDecoder::decode(const Gf2Vector& syndrome) {
  if (syndrome.size() != syn_mat_.rows())
    throw std::invalid_argument("decode: syndrome length mismatch");

  s_ = syndrome;
  s_weight_ = static_cast<uint32_t>(s_.weight());
  generator_evaluations_ = 0;

  DecodeResult result;
  result.correction = Gf2Vector(code_.n);

  if (options_.incremental) {
    for (auto& bucket : buckets_) bucket.clear();
    std::fill(bucket_of_gen_.begin(), bucket_of_gen_.end(), -1);
    std::fill(candidates_.begin(), candidates_.end(), std::nullopt);
    // Only generators adjacent to a nonzero syndrome bit can improve:
    // a flip's decrease is at most (ones hit) - (zeros hit).
    ++epoch_;
    for (uint32_t chk : s_.support()) {
      for (uint32_t q : syn_mat_.row(chk)) {
        for (uint32_t g : gen_mat_.col(q)) {
          if (gen_stamp_[g] != epoch_) {
            gen_stamp_[g] = epoch_;
            set_candidate(g, evaluate_generator(g));
          }
        }
      }
    }
  }

  std::vector<uint32_t> dirty;
  while (s_weight_ > 0) {
    std::optional<FlipCandidate> chosen;
    if (options_.incremental) {
      if (auto gen = pick_best_generator()) chosen = candidates_[*gen];
    } else {
      for (uint32_t g = 0; g < gen_mat_.rows(); ++g) {
        auto cand = evaluate_generator(g);
        if (cand && (!chosen || flip_preferred(*cand, *chosen))) chosen = cand;
      }
    }
    if (!chosen) break;

    const uint32_t weight_before = s_weight_;
    TraceStep step;
    if (options_.record_trace) {
      step.generator = chosen->generator;
      step.flipped = flip_qubits(code_, side_, *chosen);
      step.weight_before = weight_before;
    }

    apply_flip(*chosen, result);
    if (s_weight_ + static_cast<uint32_t>(chosen->decrease) != weight_before)
      throw std::logic_error("decode: cached candidate decrease is stale");

    ++result.iterations;
    result.sum_flip_sizes += chosen->size;
    if (options_.record_trace) {
      step.weight_after = s_weight_;
      result.trace.push_back(std::move(step));
    }

    if (options_.incremental) {
      mark_dirty_from_changed_checks(dirty);
      for (uint32_t g : dirty) set_candidate(g, evaluate_generator(g));
    }
  }

  result.success = (s_weight_ == 0);
  result.residual_syndrome_weight = s_weight_;
  result.generator_evaluations = generator_evaluations_;
  return result;
}

DecodeResult decode_side(const CssCode& c, const Gf2Vector& s, PauliSide side, bool trace_on) {
  SmallSetFlipDecoder decoder(c, side, {.incremental = true, .record_trace = trace_on});
  return decoder.decode(s);
}

std::pair<DecodeResult, DecodeResult> decode(const CssCode& c, const Gf2Vector& s_x,
                                             const Gf2Vector& s_z) {
  return {decode_side(c, s_x, PauliSide::X), decode_side(c, s_z, PauliSide::Z)};
}

}  // namespace ssflip
