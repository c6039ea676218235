#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "wnv/config.hpp"
#include "wnv/thresholds.hpp"

namespace wnv {

struct PaperCase {
  std::string name;
  double h0 = 0.0;
  double mu = 0.0;
  Verdict expected = Verdict::Undetermined;
};

/// The four fixed-mu cases and the two fixed-h0 cases.
std::vector<PaperCase> paper_cases();

struct CaseOutcome {
  PaperCase spec;
  RunStatus status = RunStatus::completed;
  Classification cls;
};

struct Reproduction {
  double L_star = 0.0;
  bool L_star_computed = false;
  LStarResult lstar;

  std::vector<CaseOutcome> cases;

  // Half-width threshold from the fixed-mu verdicts: largest vanishing h0 and
  // smallest spreading h0.
  double h0_vanish = 0.0;
  double h0_spread = 0.0;
  bool h0_bracket_found = false;

  // mu* at the fixed h0: the pair of shipped mu values and the bisection.
  double fixed_h0 = 0.6;
  bool mu_pair_brackets = false;
  bool mu_star_found = false;
  MuStarResult mu_star;
  std::vector<MuProbe> expansion;  // probes used to find a valid bracket
  std::string mu_note;

  bool verdicts_match() const;
};

/// Runs every case with base's model fields and solver settings, deduces the
/// brackets and bisects mu at the fixed h0. L* comes from base.run.L_star when
/// positive, otherwise from find_L_star over base.run.shifts. Progress lines go
/// to log when given.
Reproduction reproduce_paper(const RunConfig& base, std::ostream* log = nullptr);

std::string render_summary(const Reproduction& r);

}  // namespace wnv
