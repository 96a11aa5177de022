#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "greenseq/framed.hpp"
#include "greenseq/layering.hpp"
#include "greenseq/matrix.hpp"
#include "greenseq/permpath.hpp"
#include "greenseq/quiver.hpp"

namespace greenseq {

inline std::string fnv1a_digest(const std::string& data) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

struct StepRecord {
  int vertex = 0;
  Color color_at_mutation = Color::Green;
  std::optional<LayeredViolation> layered;

  nlohmann::json to_json() const {
    nlohmann::json j{{"vertex", vertex},
                     {"color", color_at_mutation == Color::Green ? "green" : "red"}};
    j["layered_ok"] = !layered.has_value();
    if (layered) j["violation"] = layered->to_json();
    return j;
  }
};

struct TruncationRecord {
  int prefix = 0;  // number of mutations applied
  long level = 0;
  bool part_a = true;  // no cross-level arrows to primed vertices
  bool part_b = true;  // truncation equals the independently mutated chain
};

/// Everything one verified run produced: per-step colors and layered checks,
/// fullness, truncation results, and the final verdict.
struct Certificate {
  std::string instance_digest;
  std::vector<int> sequence;
  std::vector<StepRecord> steps;
  std::optional<FullnessViolation> fullness;
  std::vector<TruncationRecord> truncations;
  VerdictResult result;
  bool endpoint_permutation_ok = true;  // final principal part ~ initial
  bool theorem_applies = false;  // all layered checks and fullness passed
  bool contradiction = false;    // theorem_applies but verdict not MaximalGreen

  bool truncations_ok() const {
    return std::all_of(truncations.begin(), truncations.end(),
                       [](const TruncationRecord& r) { return r.part_a && r.part_b; });
  }

  nlohmann::json to_json() const {
    nlohmann::json steps_j = nlohmann::json::array();
    for (const StepRecord& s : steps) steps_j.push_back(s.to_json());
    nlohmann::json trunc_j = nlohmann::json::array();
    for (const TruncationRecord& t : truncations) {
      trunc_j.push_back({{"prefix", t.prefix},
                         {"level", t.level},
                         {"part_a", t.part_a},
                         {"part_b", t.part_b}});
    }
    nlohmann::json j{{"schema", 1},
                     {"instance", instance_digest},
                     {"sequence", sequence},
                     {"steps", std::move(steps_j)},
                     {"full", !fullness.has_value()},
                     {"truncations", std::move(trunc_j)},
                     {"verdict", to_string(result.verdict)},
                     {"length", result.length},
                     {"endpoint_permutation_ok", endpoint_permutation_ok},
                     {"theorem_applies", theorem_applies},
                     {"contradiction", contradiction}};
    if (fullness) {
      j["fullness_violation"] = {{"level", fullness->level},
                                 {"reason", fullness->reason},
                                 {"position", fullness->position}};
    }
    if (result.step) j["witness_step"] = *result.step;
    if (result.vertex) j["witness_vertex"] = *result.vertex;
    return j;
  }
};

inline std::string instance_digest(const ExchangeMatrix& B, const Layering& eta,
                                   const std::vector<int>& seq) {
  nlohmann::json j{{"matrix", B.to_json()}, {"eta", eta.to_json()}, {"seq", seq}};
  return fnv1a_digest(j.dump());
}

/// Final principal part equal to the initial one up to a permutation of ex;
/// exhaustive search, intended for ex sizes up to 8.
inline bool permutation_equivalent(const ExchangeMatrix& A,
                                   const ExchangeMatrix& B) {
  if (A.ex().size() != B.ex().size()) return false;
  std::vector<int> ea = A.ex(), eb = B.ex();
  std::vector<std::size_t> perm(ea.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::sort(perm.begin(), perm.end());
  do {
    bool match = true;
    for (std::size_t i = 0; i < ea.size() && match; ++i) {
      for (std::size_t j = 0; j < ea.size() && match; ++j) {
        if (A.entry(ea[i], ea[j]) != B.entry(eb[perm[i]], eb[perm[j]])) {
          match = false;
        }
      }
    }
    if (match) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

/// Runs a sequence on the framed matrix, recording per-step layered checks
/// on the unframed quiver and the mutation vertex's color. A run whose
/// layered checks and fullness all pass must come out MaximalGreen; the
/// certificate flags any contradiction.
inline Certificate verify_theorem_b(const ExchangeMatrix& B, const Layering& eta,
                                    const std::vector<int>& seq) {
  Certificate cert;
  cert.instance_digest = instance_digest(B, eta, seq);
  cert.sequence = seq;
  cert.fullness = is_full(seq, eta);
  FramedState state = frame(B);
  bool layered_all_ok = true;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    StepRecord rec;
    rec.vertex = seq[i];
    ValuedIceQuiver unframed = to_quiver(state.bhat().principal());
    rec.layered = check_layered_step(unframed, seq[i], eta);
    if (rec.layered) {
      rec.layered->step = static_cast<int>(i) + 1;
      layered_all_ok = false;
    }
    rec.color_at_mutation = state.classify(seq[i]);
    cert.steps.push_back(rec);
    state = state.mutate(seq[i]);
  }
  cert.result = verdict(B, seq);
  cert.theorem_applies = layered_all_ok && !cert.fullness.has_value();
  cert.contradiction =
      cert.theorem_applies && cert.result.verdict != Verdict::MaximalGreen;
  if (cert.result.verdict == Verdict::MaximalGreen && B.ex().size() <= 8) {
    cert.endpoint_permutation_ok =
        permutation_equivalent(B, state.bhat().principal());
  }
  return cert;
}

/// Checks, at every prefix and level: (a) no arrows between a level and the
/// primed copies of a different level, (b) the t-truncation of the framed
/// run equals the framed chain on η⁻¹(t) mutated by the t-truncated
/// subsequence. Labels are preserved, so (b) is plain quiver equality.
inline std::vector<TruncationRecord> verify_truncations(
    const ExchangeMatrix& B, const Layering& eta, const std::vector<int>& seq) {
  std::vector<TruncationRecord> out;
  std::vector<long> levels = eta.levels();
  FramedState state = frame(B);
  std::map<long, FramedState> chains;
  for (long t : levels) {
    chains.emplace(t, frame(to_matrix(chain_quiver(eta.level_members(t)))));
  }
  for (std::size_t i = 0; i <= seq.size(); ++i) {
    ValuedIceQuiver framed_q = to_quiver(state.bhat());
    for (long t : levels) {
      TruncationRecord rec;
      rec.prefix = static_cast<int>(i);
      rec.level = t;
      for (const ValuedArrow& a : framed_q.arrows()) {
        int base_end = is_primed(a.src) ? a.src : (is_primed(a.dst) ? a.dst : 0);
        if (base_end == 0) continue;
        int other = is_primed(a.src) ? a.dst : a.src;
        if (is_primed(other)) continue;
        if (eta.level(unprimed(base_end)) != eta.level(other)) {
          rec.part_a = false;
        }
      }
      ValuedIceQuiver trunc = truncate(framed_q, eta, t);
      ValuedIceQuiver chain_q = to_quiver(chains.at(t).bhat());
      rec.part_b = (trunc == chain_q);
      out.push_back(rec);
    }
    if (i < seq.size()) {
      state = state.mutate(seq[i]);
      chains.at(eta.level(seq[i])) = chains.at(eta.level(seq[i])).mutate(seq[i]);
    }
  }
  return out;
}

struct AnLemmaResult {
  bool pass = true;
  std::string witness;
};

/// Along a full shuffle on the chain quiver 1 ← 2 ← … ← n, every
/// intermediate quiver must be an orientation of the A_n graph with the
/// mutation vertex a sink, and the framed run must be MaximalGreen.
inline AnLemmaResult verify_an_lemma(int n, const std::vector<int>& seq) {
  std::map<int, long> eta_map;
  for (int i = 1; i <= n; ++i) eta_map[i] = 0;
  Layering eta(eta_map, LayeringMode::ExchangeOnly);
  if (auto v = is_full(seq, eta)) {
    return {false, "sequence is not full: " + v->reason};
  }
  std::vector<int> labels(n);
  std::iota(labels.begin(), labels.end(), 1);
  ValuedIceQuiver Q = chain_quiver(labels);
  ExchangeMatrix B = to_matrix(Q);
  for (std::size_t i = 0; i < seq.size(); ++i) {
    // orientation of the A_n graph: exactly the consecutive pairs, simple
    if (Q.arrows().size() != static_cast<std::size_t>(n - 1)) {
      return {false, "not an A_n orientation at step " + std::to_string(i + 1)};
    }
    for (const ValuedArrow& a : Q.arrows()) {
      if (std::abs(a.src - a.dst) != 1 || !a.simple()) {
        return {false, "not an A_n orientation at step " + std::to_string(i + 1)};
      }
      if (a.src == seq[i]) {
        return {false, "vertex " + std::to_string(seq[i]) +
                           " is not a sink at step " + std::to_string(i + 1)};
      }
    }
    Q = mutate_quiver(Q, seq[i]);
  }
  VerdictResult v = verdict(B, seq);
  if (v.verdict != Verdict::MaximalGreen) {
    return {false, "framed run is " + to_string(v.verdict)};
  }
  return {true, ""};
}

/// Chain-structured matrix for a Full-mode layering: within-level chains on
/// the exchangeable members, no cross-level arrows.
inline ExchangeMatrix default_path_matrix(const Layering& eta) {
  std::vector<int> ex = eta.exchangeable_set();
  std::vector<ValuedArrow> arrows;
  for (long t : eta.levels()) {
    std::vector<int> members = eta.exchange_level_members(t);
    for (std::size_t i = 0; i + 1 < members.size(); ++i) {
      arrows.push_back({members[i + 1], members[i], 1, 1});
    }
  }
  return to_matrix(ValuedIceQuiver(ex, {}, std::move(arrows)));
}

/// Theorem A harness: extract seq(ν), assert fullness and the expected
/// length, then delegate to the Theorem B harness on the exchangeable
/// restriction of η.
inline Certificate verify_theorem_a(const ExchangeMatrix& B, const Layering& eta,
                                    const ContiguousPath& path) {
  if (eta.mode() != LayeringMode::Full) {
    throw WrongMode("verify_theorem_a requires a Full-mode layering");
  }
  std::vector<int> seq = seq_from_path(path, eta);
  Layering restricted = eta.exchange_restriction();
  if (static_cast<long>(seq.size()) != expected_length(restricted)) {
    throw SignIncoherent("seq(nu) has unexpected length " +
                         std::to_string(seq.size()));
  }
  if (auto v = is_full(seq, restricted)) {
    throw SignIncoherent("seq(nu) is not full: " + v->reason);
  }
  return verify_theorem_b(B, restricted, seq);
}

enum class FamilyKind { DisjointChains, AcyclicFinest, RandomLayered, PathDerived };

inline std::string to_string(FamilyKind k) {
  switch (k) {
    case FamilyKind::DisjointChains: return "disjoint-chains";
    case FamilyKind::AcyclicFinest: return "acyclic-finest";
    case FamilyKind::RandomLayered: return "random-layered";
    case FamilyKind::PathDerived: return "path-derived";
  }
  return "?";
}

inline std::optional<FamilyKind> family_from_string(const std::string& s) {
  if (s == "disjoint-chains") return FamilyKind::DisjointChains;
  if (s == "acyclic-finest") return FamilyKind::AcyclicFinest;
  if (s == "random-layered") return FamilyKind::RandomLayered;
  if (s == "path-derived") return FamilyKind::PathDerived;
  return std::nullopt;
}

struct InstanceFamily {
  FamilyKind kind = FamilyKind::DisjointChains;
  std::vector<int> level_sizes;  // DisjointChains, RandomLayered
  int n = 4;                     // AcyclicFinest vertex count, PathDerived N
  double density = 0.5;          // arrow density
  std::uint64_t seed = 20240815;
  int count = 10;  // instances to emit for randomized families
};

struct Instance {
  ExchangeMatrix B;
  Layering eta;                       // ExchangeOnly, over B's ex
  std::vector<int> seq;
  std::optional<ContiguousPath> path;  // PathDerived only
  bool layered_ok = true;              // trial-run result for RandomLayered
  std::string digest;
};

namespace detail {

inline void finish_instance(Instance& inst) {
  inst.digest = instance_digest(inst.B, inst.eta, inst.seq);
}

inline Layering layering_from_sizes(const std::vector<int>& sizes) {
  std::map<int, long> eta;
  int label = 1;
  for (std::size_t t = 0; t < sizes.size(); ++t) {
    for (int i = 0; i < sizes[t]; ++i) eta[label++] = static_cast<long>(t);
  }
  return Layering(std::move(eta), LayeringMode::ExchangeOnly);
}

}  // namespace detail

/// Reproducible instance streams for the four test families.
inline std::vector<Instance> generate(const InstanceFamily& family) {
  std::vector<Instance> out;
  std::mt19937_64 rng(family.seed);
  switch (family.kind) {
    case FamilyKind::DisjointChains: {
      Layering eta = detail::layering_from_sizes(family.level_sizes);
      std::vector<ValuedArrow> arrows;
      for (long t : eta.levels()) {
        std::vector<int> m = eta.level_members(t);
        for (std::size_t i = 0; i + 1 < m.size(); ++i) {
          arrows.push_back({m[i + 1], m[i], 1, 1});
        }
      }
      ExchangeMatrix B = to_matrix(ValuedIceQuiver(eta.domain(), {}, arrows));
      for (const auto& seq :
           enumerate_full_shuffles(eta, static_cast<std::size_t>(family.count))) {
        Instance inst{B, eta, seq, std::nullopt, true, ""};
        detail::finish_instance(inst);
        out.push_back(std::move(inst));
      }
      break;
    }
    case FamilyKind::AcyclicFinest: {
      for (int c = 0; c < family.count; ++c) {
        int n = family.n;
        std::vector<int> labels(n), order(n);
        std::iota(labels.begin(), labels.end(), 1);
        order = labels;
        std::shuffle(order.begin(), order.end(), rng);
        // random per-vertex symmetrizer in [1,3]; arrow labels derived from it
        std::map<int, long> d;
        std::uniform_int_distribution<long> d_dist(1, 3);
        for (int v : labels) d[v] = d_dist(rng);
        std::vector<ValuedArrow> arrows;
        std::uniform_real_distribution<double> coin(0.0, 1.0);
        for (int i = 0; i < n; ++i) {
          for (int j = i + 1; j < n; ++j) {
            if (coin(rng) >= family.density) continue;
            int src = order[i], dst = order[j];  // topological orientation
            long g = std::gcd(d[src], d[dst]);
            arrows.push_back({src, dst, Int(d[dst] / g), Int(d[src] / g)});
          }
        }
        Instance inst;
        inst.B = to_matrix(ValuedIceQuiver(labels, {}, std::move(arrows)));
        std::map<int, long> eta;
        for (int i = 0; i < n; ++i) eta[order[i]] = i;  // finest layering
        inst.eta = Layering(std::move(eta), LayeringMode::ExchangeOnly);
        inst.seq = order;  // source-first
        detail::finish_instance(inst);
        out.push_back(std::move(inst));
      }
      break;
    }
    case FamilyKind::RandomLayered: {
      Layering eta = detail::layering_from_sizes(family.level_sizes);
      for (int c = 0; c < family.count; ++c) {
        // per-level symmetrizer value (the in-level simple chains force it)
        std::map<long, long> dlevel;
        std::uniform_int_distribution<long> d_dist(1, 3);
        for (long t : eta.levels()) dlevel[t] = d_dist(rng);
        std::vector<ValuedArrow> arrows;
        for (long t : eta.levels()) {
          std::vector<int> m = eta.level_members(t);
          for (std::size_t i = 0; i + 1 < m.size(); ++i) {
            arrows.push_back({m[i + 1], m[i], 1, 1});
          }
        }
        std::uniform_real_distribution<double> coin(0.0, 1.0);
        std::vector<int> dom = eta.domain();
        for (std::size_t i = 0; i < dom.size(); ++i) {
          for (std::size_t j = i + 1; j < dom.size(); ++j) {
            int u = dom[i], v = dom[j];
            if (eta.level(u) == eta.level(v)) continue;
            if (coin(rng) >= family.density) continue;
            if (coin(rng) < 0.5) std::swap(u, v);
            long d_src = dlevel[eta.level(u)], d_dst = dlevel[eta.level(v)];
            long g = std::gcd(d_src, d_dst);
            arrows.push_back({u, v, Int(d_dst / g), Int(d_src / g)});
          }
        }
        Instance inst;
        inst.B = to_matrix(ValuedIceQuiver(eta.domain(), {}, std::move(arrows)));
        inst.eta = eta;
        auto shuffles = enumerate_full_shuffles(eta, 1);
        inst.seq = shuffles.empty() ? std::vector<int>{} : shuffles.front();
        Certificate cert = verify_theorem_b(inst.B, inst.eta, inst.seq);
        inst.layered_ok = cert.theorem_applies;
        detail::finish_instance(inst);
        out.push_back(std::move(inst));
      }
      break;
    }
    case FamilyKind::PathDerived: {
      std::vector<int> sizes = family.level_sizes;
      if (sizes.empty()) sizes = {family.n};
      std::map<int, long> eta_map;
      int label = 1;
      for (std::size_t t = 0; t < sizes.size(); ++t) {
        for (int i = 0; i < sizes[t]; ++i) eta_map[label++] = static_cast<long>(t);
      }
      Layering eta(eta_map, LayeringMode::Full);
      int N = label - 1;
      ExchangeMatrix B = default_path_matrix(eta);
      for (const ContiguousPath& path :
           enumerate_contiguous_paths(N, static_cast<std::size_t>(family.count))) {
        Instance inst;
        inst.B = B;
        inst.eta = eta.exchange_restriction();
        inst.seq = seq_from_path(path, eta);
        inst.path = path;
        detail::finish_instance(inst);
        out.push_back(std::move(inst));
      }
      break;
    }
  }
  return out;
}

}  // namespace greenseq
