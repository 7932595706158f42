#pragma once

#include <optional>
#include <string>

#include "toursid/core.hpp"
#include "toursid/signed_count.hpp"

namespace toursid {

enum class Verdict { LTS, LTAS, Neither, Impartial, Unknown };

std::string to_string(Verdict v);

struct Classification {
  Verdict verdict = Verdict::Unknown;
  // Which theorem fired, e.g. "wedges:C(P3)>0" or "2P3:case(iii)".
  std::string rule;
  SignedCounts counts;
  bool preconditions_met = true;
  std::optional<int> flips;  // cycles only
};

Classification classify_path(const Orientation& o, bool best_effort = false);
Classification classify_cycle(const OrientedCycle& c, bool best_effort = false);

}  // namespace toursid
