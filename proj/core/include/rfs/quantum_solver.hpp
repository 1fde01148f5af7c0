#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "rfs/bitmath.hpp"
#include "rfs/instance.hpp"
#include "rfs/ledger.hpp"
#include "rfs/statevector.hpp"

namespace rfs {

/// Levels at which the uncomputation steps of the recursive circuit are
/// skipped and the level's ancillas force-discarded without verification.
struct AblationPlan {
  std::set<int> skip_uncompute_at_levels;

  bool empty() const { return skip_uncompute_at_levels.empty(); }
  bool ablated(int level) const { return skip_uncompute_at_levels.count(level) > 0; }
};

/// Quantum Fourier Sampling (H U_f H on |0,1>), one oracle application.
/// Returns the near-certain outcome; throws if the distribution has no
/// outcome with probability >= 1 - 1e-9 (promise violated).
BitString quantum_fs(const std::function<int(const BitString&)>& f, int n, QueryLedger& ledger);

/// Sampling-mode variant for arbitrary f: the full outcome distribution,
/// which equals the squared sign spectrum of f.
std::vector<double> quantum_fs_distribution(const std::function<int(const BitString&)>& f, int n,
                                            QueryLedger& ledger);

struct QuantumRfsResult {
  std::array<double, 2> answer_distribution{};  // P(y = 0), P(y = 1)
  int answer = 0;                               // most probable answer bit
  int correct_answer = 0;                       // eval_f(1, x_1)
  double success_probability = 0.0;             // P(answer register = correct bit)
  std::vector<std::string> discard_notes;       // only populated under ablation
};

/// Quantum Recursive Fourier Sampling as the recursive circuit: only
/// U_{f_{l+1}} and U_{g_k} touch the ledger; inner U_{f_k} access is realized
/// as a sub-circuit.  With an empty ablation plan every ancilla discard is
/// verified and the answer matches eval_f(1, x_1) with probability 1 up to
/// floating-point drift.
QuantumRfsResult quantum_rfs(const ITree& tree, const BitString& x1, const AblationPlan& ablation,
                             QueryLedger& ledger, int qubit_cap = StateVector::kDefaultQubitCap);

/// Number of qubits the circuit needs (per-invocation ancilla copies are
/// allocated for ablated levels, which are not restored between uses).
int quantum_rfs_qubits(const ITree& tree, const AblationPlan& ablation);

struct KickbackReport {
  std::uint64_t cases_checked = 0;
  std::vector<std::string> violations;

  bool ok() const { return violations.empty(); }
};

/// Exhaustively checks (H_k (x) H) U_{f_k} (H_k (x) H) |params, chi, upsilon>
/// = |params, chi + upsilon s_{k-1}(params), upsilon> on seeded random trees.
KickbackReport verify_kickback_identity(int n, int depth = 2, std::uint64_t seed = 1,
                                        GFamily family = GFamily::LastArgAnd);

}  // namespace rfs
