#include "toursid/classify.hpp"

#include "toursid/error.hpp"

namespace toursid {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::LTS: return "LTS";
    case Verdict::LTAS: return "LTAS";
    case Verdict::Neither: return "Neither";
    case Verdict::Impartial: return "Impartial";
    case Verdict::Unknown: return "Unknown";
  }
  return "Unknown";
}

namespace {

int sign_of_min_k(const SignedCounts& c) {
  if (!c.min_k) return 0;
  long long v = (*c.min_k % 2 == 0) ? c.c_min_k : -c.c_min_k;
  return v > 0 ? 1 : -1;
}

// Direction suggested by the P5/2P3/min-k cascade once C(P3) = 0:
// +1 for the LTS branch, -1 for LTAS, 0 for the "neither" branch.
// Also reports whether the 2P3 theorem (rather than the P5 one) decided.
struct Cascade {
  int direction = 0;
  bool via_2p3 = false;
  bool degenerate = false;  // C(P5) = -C(2P3), no theorem applies
};

Cascade run_cascade(const SignedCounts& c) {
  Cascade out;
  const long long p5 = c.c_p5, t2 = c.c_2p3;
  if (p5 == -t2) {
    out.degenerate = true;
    return out;
  }
  if (p5 != 0) {
    if (p5 > 0 && p5 > -t2) out.direction = 1;
    else if (p5 < 0 && p5 < -t2) out.direction = -1;
    return out;
  }
  out.via_2p3 = true;
  const int k_sign = sign_of_min_k(c);
  if (t2 > 0 && (!c.min_k || k_sign > 0)) out.direction = 1;
  else if (t2 < 0 && (!c.min_k || k_sign < 0)) out.direction = -1;
  return out;
}

std::string case_tag(int direction) {
  return direction > 0 ? "case(i)" : (direction < 0 ? "case(ii)" : "case(iii)");
}

}  // namespace

Classification classify_path(const Orientation& o, bool best_effort) {
  if (o.empty()) throw Error("EmptyInput", "orientation is empty");
  Classification r;
  const int e = static_cast<int>(o.size());
  const int v = e + 1;
  r.counts = path_counts(o);
  if (e == 1) {
    r.verdict = Verdict::Impartial;
    r.rule = "impartial:single-arc";
    return r;
  }
  r.preconditions_met = v % 4 != 0;
  if (!r.preconditions_met && !best_effort)
    throw Error("PreconditionViolated", "path has v = " + std::to_string(v) + " vertices, divisible by 4");

  const auto& c = r.counts;
  if (c.c_p3 > 0) {
    r.verdict = Verdict::LTAS;
    r.rule = "wedges:C(P3)>0";
    return r;
  }
  if (c.c_p3 < 0) {
    r.verdict = Verdict::LTS;
    r.rule = "wedges:C(P3)<0";
    return r;
  }
  Cascade cas = run_cascade(c);
  if (cas.degenerate) {
    if (r.preconditions_met)
      throw Error("InternalAssertionFailed", "C(P5) = -C(2P3) although v is 2 mod 4");
    r.verdict = Verdict::Unknown;
    r.rule = "P5-2P3:degenerate";
    return r;
  }
  r.verdict = cas.direction > 0 ? Verdict::LTS : (cas.direction < 0 ? Verdict::LTAS : Verdict::Neither);
  r.rule = std::string(cas.via_2p3 ? "2P3:" : "P5-2P3:") + case_tag(cas.direction);
  return r;
}

Classification classify_cycle(const OrientedCycle& cyc, bool best_effort) {
  const int len = static_cast<int>(cyc.length());
  if (len < 3) throw Error("TooShort", "a cycle needs at least 3 edges");
  Classification r;
  const int t = cyc.flips();
  r.flips = t;
  r.preconditions_met = len % 4 != 0;
  if (!r.preconditions_met && !best_effort)
    throw Error("PreconditionViolated", "cycle length " + std::to_string(len) + " is divisible by 4");
  r.counts = cycle_counts(cyc);
  const auto& c = r.counts;

  // Parity tables shared by the cycle theorems: whether the C_len term
  // pushes in the LTS or LTAS direction (odd length: it vanishes).
  const bool ts_ok = len % 2 == 1 || (len % 4 == 0 && t % 2 == 0) || (len % 4 == 2 && t % 2 == 1);
  const bool tas_ok = len % 2 == 1 || (len % 4 == 0 && t % 2 == 1) || (len % 4 == 2 && t % 2 == 0);

  auto decide = [&](int direction, const std::string& prefix) {
    if (direction > 0) {
      r.verdict = ts_ok ? Verdict::LTS : Verdict::Neither;
      r.rule = ts_ok ? prefix + "case(i)" : "cycle-parity";
    } else if (direction < 0) {
      r.verdict = tas_ok ? Verdict::LTAS : Verdict::Neither;
      r.rule = tas_ok ? prefix + "case(ii)" : "cycle-parity";
    } else {
      r.verdict = Verdict::Neither;
      r.rule = prefix + "case(iii)";
    }
  };

  if (c.c_p3 != 0) {
    const int direction = c.c_p3 < 0 ? 1 : -1;
    decide(direction, "wedges-cycle:");
    if (r.rule == "wedges-cycle:case(i)") r.rule = "wedges-cycle:C(P3)<0";
    if (r.rule == "wedges-cycle:case(ii)") r.rule = "wedges-cycle:C(P3)>0";
    return r;
  }
  if (len % 2 == 1) throw Error("InternalAssertionFailed", "C(P3) = 0 on an odd cycle");
  Cascade cas = run_cascade(c);
  if (cas.degenerate) {
    if (r.preconditions_met)
      throw Error("InternalAssertionFailed", "C(P5) = -C(2P3) although the length is 2 mod 4");
    r.verdict = Verdict::Unknown;
    r.rule = "P5-2P3-cycle:degenerate";
    return r;
  }
  decide(cas.direction, cas.via_2p3 ? "2P3-cycle:" : "P5-2P3-cycle:");
  return r;
}

}  // namespace toursid
