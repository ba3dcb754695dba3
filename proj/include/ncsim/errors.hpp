#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ncsim {

// Base class for all library errors.
struct SimError : std::runtime_error {
  explicit SimError(const std::string& msg) : std::runtime_error(msg) {}
};

// ---- finite field ----
struct NonPrimePower : SimError {
  explicit NonPrimePower(const std::string& msg) : SimError(msg) {}
};
struct ReduciblePolynomial : SimError {
  explicit ReduciblePolynomial(const std::string& msg) : SimError(msg) {}
};
struct DivisionByZero : SimError {
  DivisionByZero() : SimError("division by zero field element") {}
};

// ---- linear algebra ----
struct AmbientMismatch : SimError {
  explicit AmbientMismatch(const std::string& msg) : SimError(msg) {}
};
struct EmptySet : SimError {
  explicit EmptySet(const std::string& msg) : SimError(msg) {}
};

// ---- network model ----
struct CycleDetected : SimError {
  explicit CycleDetected(const std::string& msg) : SimError(msg) {}
};
struct UnreachableNode : SimError {
  explicit UnreachableNode(const std::string& msg) : SimError(msg) {}
};
struct RateViolation : SimError {
  RateViolation(int tail_, int head_, const std::string& msg)
      : SimError(msg), tail(tail_), head(head_) {}
  int tail;
  int head;
};
struct InfeasibleDegreeConstraints : SimError {
  explicit InfeasibleDegreeConstraints(const std::string& msg) : SimError(msg) {}
};

// ---- dissemination ----
struct NeverSatisfied : SimError {
  explicit NeverSatisfied(const std::string& msg) : SimError(msg) {}
};
struct OutOfRange : SimError {
  explicit OutOfRange(const std::string& msg) : SimError(msg) {}
};
struct CoefficientLogMissing : SimError {
  explicit CoefficientLogMissing(const std::string& msg) : SimError(msg) {}
};

// ---- inference ----
struct NoCandidateParent : SimError {
  NoCandidateParent(int node_, const std::string& msg) : SimError(msg), node(node_) {}
  int node;
};
struct DistinctnessViolated : SimError {
  DistinctnessViolated(std::vector<std::pair<int, int>> pairs_, const std::string& msg)
      : SimError(msg), pairs(std::move(pairs_)) {}
  std::vector<std::pair<int, int>> pairs;
};

// ---- byzantine ----
struct AttackerIsSourceOrReceiver : SimError {
  explicit AttackerIsSourceOrReceiver(const std::string& msg) : SimError(msg) {}
};
struct NoCorruptionObserved : SimError {
  explicit NoCorruptionObserved(const std::string& msg) : SimError(msg) {}
};
struct InconsistentObservations : SimError {
  explicit InconsistentObservations(const std::string& msg) : SimError(msg) {}
};

// ---- overlay ----
struct DisconnectedOverlay : SimError {
  explicit DisconnectedOverlay(const std::string& msg) : SimError(msg) {}
};

// ---- cli / io ----
struct BadConfig : SimError {
  explicit BadConfig(const std::string& msg) : SimError(msg) {}
};
struct IoFailure : SimError {
  explicit IoFailure(const std::string& msg) : SimError(msg) {}
};

}  // namespace ncsim
