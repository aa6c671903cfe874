#pragma once

#include "banachlab/numindex.hpp"

#include <string>
#include <vector>

namespace banach {

// One side of an inequality claim.  Every value says where it came from.
struct SideValue {
  double value = 0.0;
  bool exact = false;
  std::string source;
};

// A checked claim lhs <= rhs.  margin = rhs - lhs.  The verdict is
// "violated" only when the margin is below -tol and both sides are exact;
// a heuristic side can never produce a violation, only inconclusive.
struct InequalityReport {
  std::string name;
  SideValue lhs, rhs;
  double margin = 0.0;
  double tol = 0.0;
  std::string witnesses;
  std::string verdict;  // holds | holds-within-tolerance | violated | inconclusive-heuristic
};

std::string judge(InequalityReport& r);

// Precomposition embedding J -> (T -> T o J) as an operator on L(X, Y),
// where J is an endomorphism of X.  Isometric: ||phi_J|| = ||J||.
Operator embed_precompose(const Operator& j, const SpacePtr& y, const Config& cfg = default_config());

// Postcomposition embedding S -> (T -> S o T) on L(X, Y), S an endomorphism
// of Y.  Also isometric.
Operator embed_postcompose(const Operator& s, const SpacePtr& x, const Config& cfg = default_config());

// Runs the inequality battery over every ordered pair of catalog spaces:
// index of L(X,Y), of the projective and injective tensor products against
// min(n(X), n(Y)), dual index against the index, and the radius transport
// claims for the embeddings and tensor lifts.
std::vector<InequalityReport> verify_suite(const std::vector<SpacePtr>& catalog,
                                           const Config& cfg = default_config());

}  // namespace banach
