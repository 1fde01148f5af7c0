#include "rfs/quantum_solver.hpp"

#include <cmath>
#include <stdexcept>

namespace rfs {

namespace {

std::string anc_x_name(int level, int copy) {
  return "x" + std::to_string(level + 1) + "." + std::to_string(copy);
}
std::string anc_y_name(int level, int copy) {
  return "yp" + std::to_string(level) + "." + std::to_string(copy);
}

/// Invocation count of the level-k sub-circuit (ablated levels drop the
/// second U_f application, halving everything beneath them).
std::vector<int> invocation_counts(int depth, const AblationPlan& ablation) {
  std::vector<int> inv(static_cast<std::size_t>(depth) + 2, 0);
  inv[1] = 1;
  for (int k = 1; k <= depth; ++k) {
    inv[static_cast<std::size_t>(k) + 1] = inv[static_cast<std::size_t>(k)] * (ablation.ablated(k) ? 1 : 2);
  }
  return inv;
}

struct CircuitRun {
  const ITree& tree;
  const AblationPlan& ablation;
  QueryLedger& ledger;
  StateVector& state;
  std::vector<int> inv_counter;  // per level: next fresh ancilla copy
  std::vector<std::string> notes;

  bool verify_discards() const { return ablation.empty(); }

  void note_or_throw(const std::string& reg, int level, const std::string& what) {
    const std::string msg = "level " + std::to_string(level) + ": ancilla " + reg + " " + what;
    if (verify_discards()) {
      throw std::runtime_error("discard verification failed: " + msg);
    }
    notes.push_back(msg);
  }

  void apply_leaf_oracle(const std::vector<std::string>& controls, const std::string& target) {
    const int top = tree.depth() + 1;
    state.apply_oracle(
        controls, target,
        [this, top](const std::vector<BitString>& args) { return tree.eval_f(top, args); },
        &ledger, "Uf", top);
  }

  void apply_f(int k, const std::vector<std::string>& controls, const std::string& target) {
    if (k == tree.depth() + 1) {
      apply_leaf_oracle(controls, target);
    } else {
      run_level(k, controls, target);
    }
  }

  // Recursive sub-circuit realizing U_{f_k} on (x_1..x_k, target).
  void run_level(int k, const std::vector<std::string>& controls, const std::string& target) {
    const bool ablated = ablation.ablated(k);
    const int copy = ablated ? inv_counter[static_cast<std::size_t>(k)]++ : 0;
    const std::string ax = anc_x_name(k, copy);
    const std::string ay = anc_y_name(k, copy);

    std::vector<std::string> child_controls = controls;
    child_controls.push_back(ax);

    state.apply_hadamards(ax);
    state.apply_hadamards(ay);
    apply_f(k + 1, child_controls, ay);
    state.apply_hadamards(ax);
    state.apply_oracle(
        child_controls, target,
        [this, k](const std::vector<BitString>& args) { return tree.eval_g(k, args); }, &ledger,
        "Ug", k);
    if (!ablated) {
      state.apply_hadamards(ax);
      apply_f(k + 1, child_controls, ay);
      state.apply_hadamards(ax);
      state.apply_hadamards(ay);
    }

    // Discard: ancillas must sit at their documented values |0>, |1>.
    if (!ablated || !verify_discards()) {
      if (!state.register_is_value(ax, BitString::zeros(state.layout().width(ax)))) {
        note_or_throw(ax, k, "not restored to |0>");
      }
      if (!state.register_is_value(ay, BitString(1, 1))) {
        note_or_throw(ay, k, "not restored to |1>");
      }
    }
  }
};

}  // namespace

BitString quantum_fs(const std::function<int(const BitString&)>& f, int n, QueryLedger& ledger) {
  const std::vector<double> probs = quantum_fs_distribution(f, n, ledger);
  std::uint64_t best = 0;
  for (std::uint64_t v = 1; v < probs.size(); ++v) {
    if (probs[v] > probs[best]) best = v;
  }
  if (probs[best] < 1.0 - 1e-9) {
    throw std::runtime_error("quantum_fs: outcome not deterministic; oracle violates the linear promise");
  }
  return BitString(best, n);
}

std::vector<double> quantum_fs_distribution(const std::function<int(const BitString&)>& f, int n,
                                            QueryLedger& ledger) {
  StateVector state = StateVector::basis(RegisterLayout({{"x", n}, {"y", 1}}),
                                         {{"y", BitString(1, 1)}});
  state.apply_hadamards("x");
  state.apply_hadamards("y");
  state.apply_oracle(
      {"x"}, "y", [&f](const std::vector<BitString>& args) { return f(args[0]); }, &ledger, "Uf", 0);
  state.apply_hadamards("x");
  state.apply_hadamards("y");
  // The ancilla returns to |1> and can be safely discarded.
  state = state.discard_register("y", BitString(1, 1));
  return state.marginal("x");
}

int quantum_rfs_qubits(const ITree& tree, const AblationPlan& ablation) {
  const int l = tree.depth();
  const std::vector<int> inv = invocation_counts(l, ablation);
  int qubits = tree.length(1) + 1;  // x1 and the top-level target
  for (int k = 1; k <= l; ++k) {
    const int copies = ablation.ablated(k) ? inv[static_cast<std::size_t>(k)] : 1;
    qubits += copies * (tree.length(k + 1) + 1);
  }
  return qubits;
}

QuantumRfsResult quantum_rfs(const ITree& tree, const BitString& x1, const AblationPlan& ablation,
                             QueryLedger& ledger, int qubit_cap) {
  const int l = tree.depth();
  if (x1.width() != tree.length(1)) {
    throw std::invalid_argument("quantum_rfs: x1 width mismatch");
  }
  for (int level : ablation.skip_uncompute_at_levels) {
    if (level < 1 || level > l) {
      throw std::invalid_argument("quantum_rfs: ablation level out of range");
    }
  }

  const std::vector<int> inv = invocation_counts(l, ablation);
  std::vector<std::pair<std::string, int>> regs{{"x1", tree.length(1)}};
  for (int k = 1; k <= l; ++k) {
    const int copies = ablation.ablated(k) ? inv[static_cast<std::size_t>(k)] : 1;
    for (int i = 0; i < copies; ++i) {
      regs.emplace_back(anc_x_name(k, i), tree.length(k + 1));
      regs.emplace_back(anc_y_name(k, i), 1);
    }
  }
  regs.emplace_back("y0", 1);

  std::map<std::string, BitString> init{{"x1", x1}};
  for (int k = 1; k <= l; ++k) {
    const int copies = ablation.ablated(k) ? inv[static_cast<std::size_t>(k)] : 1;
    for (int i = 0; i < copies; ++i) {
      init[anc_y_name(k, i)] = BitString(1, 1);
    }
  }

  StateVector state = StateVector::basis(RegisterLayout(std::move(regs)), init, qubit_cap);
  CircuitRun run{tree, ablation, ledger, state,
                 std::vector<int>(static_cast<std::size_t>(l) + 1, 0), {}};
  run.run_level(1, {"x1"}, "y0");

  QuantumRfsResult result;
  const std::vector<double> dist = state.marginal("y0");
  result.answer_distribution = {dist[0], dist[1]};
  result.answer = dist[1] > dist[0] ? 1 : 0;
  std::vector<BitString> top_args{x1};
  result.correct_answer = tree.eval_f(1, top_args);
  result.success_probability = dist[static_cast<std::size_t>(result.correct_answer)];
  result.discard_notes = std::move(run.notes);
  return result;
}

KickbackReport verify_kickback_identity(int n, int depth, std::uint64_t seed, GFamily family) {
  if (n > 3) throw std::invalid_argument("verify_kickback_identity: n must be <= 3");
  FSTreeConfig config;
  config.lengths.assign(static_cast<std::size_t>(depth) + 1, n);
  config.g_family = family;
  config.seed = seed;
  const FSTree tree = FSTree::build(config);

  KickbackReport report;
  for (int k = 2; k <= depth + 1; ++k) {
    std::vector<std::pair<std::string, int>> regs;
    for (int j = 1; j < k; ++j) regs.emplace_back("p" + std::to_string(j), n);
    regs.emplace_back("xk", n);
    regs.emplace_back("y", 1);
    const RegisterLayout layout(regs);

    std::vector<BitString> params(static_cast<std::size_t>(k - 1), BitString::zeros(n));
    std::vector<std::uint64_t> param_vals(static_cast<std::size_t>(k - 1), 0);
    const std::uint64_t param_space = 1ULL << (n * (k - 1));

    for (std::uint64_t pv = 0; pv < param_space; ++pv) {
      std::uint64_t rest = pv;
      for (int j = k - 2; j >= 0; --j) {
        param_vals[static_cast<std::size_t>(j)] = rest & ((1ULL << n) - 1);
        params[static_cast<std::size_t>(j)] = BitString(param_vals[static_cast<std::size_t>(j)], n);
        rest >>= n;
      }
      const BitString s = tree.secret(k - 1, params);

      for (std::uint64_t chi = 0; chi < (1ULL << n); ++chi) {
        for (int upsilon = 0; upsilon <= 1; ++upsilon) {
          std::map<std::string, BitString> values;
          for (int j = 1; j < k; ++j) {
            values["p" + std::to_string(j)] = params[static_cast<std::size_t>(j - 1)];
          }
          values["xk"] = BitString(chi, n);
          values["y"] = BitString(static_cast<std::uint64_t>(upsilon), 1);
          StateVector state = StateVector::basis(layout, values);

          std::vector<std::string> controls;
          for (int j = 1; j < k; ++j) controls.push_back("p" + std::to_string(j));
          controls.push_back("xk");

          state.apply_hadamards("xk");
          state.apply_hadamards("y");
          state.apply_oracle(controls, "y", [&tree, k](const std::vector<BitString>& args) {
            return tree.eval_f(k, args);
          });
          state.apply_hadamards("xk");
          state.apply_hadamards("y");

          BitString expected_chi = BitString(chi, n);
          if (upsilon == 1) expected_chi = expected_chi ^ s;

          ++report.cases_checked;
          const double p_chi = state.probability_of("xk", expected_chi);
          const double p_y = state.probability_of("y", BitString(static_cast<std::uint64_t>(upsilon), 1));
          bool params_ok = true;
          for (int j = 1; j < k; ++j) {
            params_ok = params_ok && state.register_is_value("p" + std::to_string(j),
                                                             params[static_cast<std::size_t>(j - 1)]);
          }
          if (p_chi < 1.0 - 1e-9 || p_y < 1.0 - 1e-9 || !params_ok) {
            report.violations.push_back("k=" + std::to_string(k) + " params=" + std::to_string(pv) +
                                        " chi=" + std::to_string(chi) +
                                        " upsilon=" + std::to_string(upsilon));
          }
        }
      }
    }
  }
  return report;
}

}  // namespace rfs
