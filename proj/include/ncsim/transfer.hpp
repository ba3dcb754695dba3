#pragma once

#include "ncsim/dissemination.hpp"
#include "ncsim/linalg.hpp"

namespace ncsim {

// Input-output transfer matrices rebuilt from a run's coefficient log.
//
// Each lane's packet at slot t is expressed directly as a linear function of
// the n source messages by unrolling the gated state recursion forward (the
// gated adjacency is nilpotent, so T steps suffice; no inversion). The
// computation never touches the simulator's node buffers: lane activity and
// buffer composition are rederived from waiting times and the canonical lane
// order, so the resulting row spaces can be checked bit-for-bit against the
// spaces the simulator recorded.
class TransferOracle {
 public:
  explicit TransferOracle(const Trace& trace);

  // H_Sv(t): one row per packet delivered to v at slot t (0 x n when nothing
  // arrives).
  Mat at(int v, int t);
  // Rows of H_Sv(1..t) stacked.
  Mat stacked(int v, int t);

 private:
  void advance_to(int t);

  const Trace& tr_;
  Field f_;
  int n_;
  int computed_ = 0;
  // rows_[t][lane]: packet on the lane at slot t as a combination of X.
  std::vector<std::vector<std::vector<felem>>> rows_;
};

}  // namespace ncsim
