#include "rfs/conjugate.hpp"

#include <stdexcept>

namespace rfs::conjugate {

Expr Expr::bits(BitString b) {
  Expr e;
  e.kind_ = Kind::Bits;
  e.width_ = b.width();
  e.bits_ = b;
  e.repr_ = "#" + b.str();
  return e;
}

Expr Expr::symbol(int register_id, std::uint64_t epoch, int width) {
  Expr e;
  e.kind_ = Kind::Symbol;
  e.width_ = width;
  e.repr_ = "?r" + std::to_string(register_id) + "e" + std::to_string(epoch);
  return e;
}

Expr Expr::secret(int level, std::vector<Expr> args, int width) {
  Expr e;
  e.kind_ = Kind::Secret;
  e.width_ = width;
  std::string r = "s" + std::to_string(level) + "(";
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (i) r += ",";
    r += args[i].repr();
  }
  r += ")";
  e.repr_ = std::move(r);
  return e;
}

Expr Expr::opaque(std::string repr, int width) {
  Expr e;
  e.kind_ = Kind::Symbol;
  e.width_ = width;
  e.repr_ = "{" + std::move(repr) + "}";
  return e;
}

const BitString& Expr::as_bits() const {
  if (kind_ != Kind::Bits) throw std::logic_error("Expr: not a concrete value");
  return bits_;
}

std::string KickbackToken::str() const {
  return "X[" + oracle_id + ";" + fingerprint + ";j=" + std::to_string(register_index) + "]";
}

Side Side::concrete(BitString value) {
  Side s;
  s.is_defined = true;
  s.concrete_part = value;
  return s;
}

bool Side::add_token(KickbackToken t) {
  auto it = tokens.find(t);
  if (it != tokens.end()) {
    tokens.erase(it);
    return false;
  }
  tokens.insert(std::move(t));
  return true;
}

void Side::add_value(const Expr& shift) {
  if (!is_defined) throw std::logic_error("Side::add_value on undefined side");
  if (shift.is_concrete()) {
    concrete_part = concrete_part ^ shift.as_bits();
    return;
  }
  auto it = symbolic_parts.find(shift);
  if (it != symbolic_parts.end()) {
    symbolic_parts.erase(it);
  } else {
    symbolic_parts.insert(shift);
  }
}

Expr Side::as_expr() const {
  if (!is_defined) throw std::logic_error("Side::as_expr on undefined side");
  if (symbolic_parts.empty() && tokens.empty()) return Expr::bits(concrete_part);
  if (symbolic_parts.size() == 1 && tokens.empty() && concrete_part.value() == 0) {
    return *symbolic_parts.begin();
  }
  return Expr::opaque(str(), concrete_part.width());
}

std::string Side::str() const {
  if (!is_defined) return "undefined";
  std::string s = concrete_part.str();
  for (const Expr& e : symbolic_parts) s += "+" + e.repr();
  for (const KickbackToken& t : tokens) s += "+" + t.str();
  return s;
}

ConjugateRegister ConjugateRegister::computational(int id, std::string name, BitString value) {
  ConjugateRegister r;
  r.id = id;
  r.name = std::move(name);
  r.width = value.width();
  r.x = Side::concrete(value);
  return r;
}

ConjugateRegister ConjugateRegister::phase(int id, std::string name, BitString chi_value) {
  ConjugateRegister r;
  r.id = id;
  r.name = std::move(name);
  r.width = chi_value.width();
  r.chi = Side::concrete(chi_value);
  return r;
}

Expr ConjugateRegister::x_expr() const {
  if (x.defined()) return x.as_expr();
  return Expr::symbol(id, epoch, width);
}

void hadamard_pair(ConjugateRegister& reg) {
  std::swap(reg.x, reg.chi);
  ++reg.epoch;
}

ConjugateOracle ConjugateOracle::fourier_sampling(const BitString& secret) {
  ConjugateOracle o;
  o.id = "F";
  o.num_controls = 1;
  o.control_widths = {secret.width()};
  o.f_level = 1;
  o.forward = [secret](std::span<const BitString> args) { return rfs::dot(secret, args[0]); };
  o.secret_fn = [secret](std::span<const BitString>) { return secret; };
  return o;
}

ConjugateOracle ConjugateOracle::tree_f(const ITree& tree) {
  const int level = tree.depth() + 1;
  ConjugateOracle o;
  o.id = "F" + std::to_string(level);
  o.num_controls = level;
  for (int j = 1; j <= level; ++j) o.control_widths.push_back(tree.length(j));
  o.f_level = level;
  o.forward = [&tree, level](std::span<const BitString> args) { return tree.eval_f(level, args); };
  o.secret_fn = [&tree, level](std::span<const BitString> prefix) {
    return tree.secret(level - 1, prefix);
  };
  return o;
}

ConjugateOracle ConjugateOracle::tree_g(const ITree& tree, int k) {
  ConjugateOracle o;
  o.id = "G" + std::to_string(k);
  o.num_controls = k + 1;
  for (int j = 1; j <= k + 1; ++j) o.control_widths.push_back(tree.length(j));
  o.is_g = true;
  o.g_level = k;
  o.forward = [&tree, k](std::span<const BitString> args) { return tree.eval_g(k, args); };
  o.secret_fn = [&tree, k](std::span<const BitString> prefix) {
    // Secret of the effective F_k oracle this G realizes under the promise.
    return tree.secret(k - 1, prefix);
  };
  return o;
}

namespace {

void check_shapes(const ConjugateOracle& oracle, const std::vector<ConjugateRegister*>& controls,
                  const ConjugateRegister& target) {
  if (static_cast<int>(controls.size()) != oracle.num_controls) {
    throw std::invalid_argument("cp_apply: control count mismatch for oracle " + oracle.id);
  }
  for (std::size_t i = 0; i < controls.size(); ++i) {
    if (controls[i]->width != oracle.control_widths[i]) {
      throw std::invalid_argument("cp_apply: control width mismatch at position " +
                                  std::to_string(i + 1));
    }
  }
  if (target.width != 1) throw std::invalid_argument("cp_apply: target must have width 1");
}

bool all_x_concrete(const std::vector<ConjugateRegister*>& controls) {
  for (const auto* r : controls) {
    if (!r->x.is_concrete()) return false;
  }
  return true;
}

/// The kickback law of the effective F oracle at the given level: the last of
/// `controls` receives the promised secret shift, every other control whose
/// phase side is defined receives an opaque token.
void apply_f_law(const ConjugateOracle& oracle, int level,
                 const std::vector<ConjugateRegister*>& controls, Trace* trace) {
  const std::size_t k = controls.size();
  std::vector<Expr> prefix_exprs;
  prefix_exprs.reserve(k - 1);
  bool prefix_concrete = true;
  for (std::size_t j = 0; j + 1 < k; ++j) {
    prefix_exprs.push_back(controls[j]->x_expr());
    prefix_concrete = prefix_concrete && prefix_exprs.back().is_concrete();
  }

  Expr shift = Expr::bits(BitString::zeros(controls.back()->width));
  if (prefix_concrete) {
    std::vector<BitString> prefix_bits;
    for (const Expr& e : prefix_exprs) prefix_bits.push_back(e.as_bits());
    shift = Expr::bits(oracle.secret_fn(prefix_bits));
  } else {
    shift = Expr::secret(level - 1, prefix_exprs, controls.back()->width);
  }

  std::string fingerprint;
  for (const Expr& e : prefix_exprs) fingerprint += e.repr() + ";";
  const std::string effective_id = "F" + std::to_string(level);

  if (controls.back()->chi.defined()) {
    controls.back()->chi.add_value(shift);
    if (trace) {
      trace->log("kickback", controls.back()->name + ".chi += " + shift.repr());
    }
  }
  for (std::size_t j = 0; j + 1 < k; ++j) {
    ConjugateRegister* reg = controls[j];
    if (!reg->chi.defined()) continue;  // well-defined x passes through untouched
    KickbackToken token{effective_id, fingerprint, static_cast<int>(j + 1)};
    const bool created = reg->chi.add_token(token);
    if (trace) {
      trace->log(created ? "token-create" : "token-cancel", reg->name + ": " + token.str());
      if (created) {
        ++trace->tokens_created;
      } else {
        ++trace->tokens_cancelled;
      }
    }
  }
}

/// Unpromised phase query: opaque tokens to every phase-defined control.
void apply_generic_phase_law(const ConjugateOracle& oracle,
                             const std::vector<ConjugateRegister*>& controls, Trace* trace) {
  std::string fingerprint;
  for (const auto* r : controls) fingerprint += r->x_expr().repr() + ";";
  for (std::size_t j = 0; j < controls.size(); ++j) {
    ConjugateRegister* reg = controls[j];
    if (!reg->chi.defined()) continue;
    KickbackToken token{oracle.id, fingerprint, static_cast<int>(j + 1)};
    const bool created = reg->chi.add_token(token);
    if (trace) {
      trace->log(created ? "token-create" : "token-cancel", reg->name + ": " + token.str());
      if (created) {
        ++trace->tokens_created;
      } else {
        ++trace->tokens_cancelled;
      }
    }
  }
}

}  // namespace

void cp_apply(const ConjugateOracle& oracle, std::vector<ConjugateRegister*> controls,
              ConjugateRegister& target, QueryLedger* ledger, Trace* trace) {
  check_shapes(oracle, controls, target);
  const int level = oracle.is_g ? oracle.g_level : oracle.f_level;
  if (ledger) ledger->record(oracle.id, level);

  // Computational query: all inputs well-defined on the x side.
  if (all_x_concrete(controls) && target.x.is_concrete()) {
    std::vector<BitString> args;
    args.reserve(controls.size());
    for (const auto* r : controls) args.push_back(r->x.concrete_part);
    const int bit = oracle.forward(args);
    target.x.add_value(Expr::bits(BitString(static_cast<std::uint64_t>(bit), 1)));
    if (trace) trace->log("apply " + oracle.id, "computational query, y += " + std::to_string(bit));
    return;
  }

  // Phase query: the target's phase (upsilon) is concrete.  Controls may sit
  // on either side; only phase-defined controls receive shifts.
  if (target.chi.is_concrete()) {
    const int upsilon = static_cast<int>(target.chi.concrete_part.value() & 1);
    if (trace) {
      trace->log("apply " + oracle.id, "phase query, upsilon = " + std::to_string(upsilon));
    }
    if (upsilon == 0) return;  // upsilon X = 0: no shifts anywhere

    if (!oracle.is_g) {
      apply_f_law(oracle, oracle.f_level, controls, trace);
      return;
    }

    // G_k carries no kickback promise of its own.  When its last control
    // holds exactly the promised secret s_k(x_1..x_k), the derivation promise
    // makes the query act as the effective F_k oracle; otherwise the shifts
    // are opaque.
    const std::size_t k = controls.size() - 1;  // g_level
    std::vector<Expr> secret_args;
    bool args_concrete = true;
    for (std::size_t j = 0; j < k; ++j) {
      secret_args.push_back(controls[j]->x_expr());
      args_concrete = args_concrete && secret_args.back().is_concrete();
    }
    Expr promised = Expr::secret(static_cast<int>(k), secret_args, controls.back()->width);
    if (args_concrete) {
      std::vector<BitString> arg_bits;
      for (const Expr& e : secret_args) arg_bits.push_back(e.as_bits());
      promised = Expr::bits(oracle.secret_fn(arg_bits));
    }
    const Side& last_x = controls.back()->x;
    const bool promise_holds = last_x.defined() && last_x.tokens.empty() &&
                               last_x.as_expr() == promised;
    if (promise_holds) {
      std::vector<ConjugateRegister*> effective(controls.begin(), controls.end() - 1);
      apply_f_law(oracle, oracle.g_level, effective, trace);
    } else {
      apply_generic_phase_law(oracle, controls, trace);
    }
    return;
  }

  throw std::invalid_argument("cp_apply: ill-posed query (neither computational nor phase mode)");
}

BitString cp_fs(const ConjugateOracle& oracle, int n, QueryLedger& ledger, Trace* trace) {
  if (oracle.num_controls != 1 || oracle.control_widths[0] != n) {
    throw std::invalid_argument("cp_fs: oracle shape mismatch");
  }
  ConjugateRegister bias = ConjugateRegister::phase(1, "X", BitString::zeros(n));
  ConjugateRegister ancilla = ConjugateRegister::phase(2, "Y", BitString(1, 1));
  cp_apply(oracle, {&bias}, ancilla, &ledger, trace);
  if (auto violation = discard_check(ancilla, /*phase_side=*/true, BitString(1, 1))) {
    throw std::runtime_error("cp_fs: ancilla discard failed: " + *violation);
  }
  if (!bias.chi.is_concrete()) {
    throw std::runtime_error("cp_fs: phase output is not well-defined: " + bias.chi.str());
  }
  return bias.chi.concrete_part;
}

std::string DiscardError::str() const {
  return "discard error at level " + std::to_string(level) + ", register " + register_name + ": " +
         reason;
}

std::optional<std::string> discard_check(const ConjugateRegister& reg, bool phase_side,
                                         const BitString& expected) {
  const Side& side = phase_side ? reg.chi : reg.x;
  const char* side_name = phase_side ? "phase" : "computational";
  if (!side.defined()) {
    const Side& other = phase_side ? reg.x : reg.chi;
    std::string what = "expected " + std::string(side_name) + " value " + expected.str() +
                       " but that side is undefined";
    if (other.defined() && !other.symbolic_parts.empty()) {
      return what + "; value correlated with undefined input (" + other.str() + ")";
    }
    if (other.defined() && !other.tokens.empty()) {
      return what + "; unresolved kickback token (" + other.str() + ")";
    }
    if (other.defined()) {
      return what + "; other side holds " + other.str();
    }
    return what;
  }
  if (!side.tokens.empty()) {
    return std::string("unresolved kickback token on ") + side_name + " side (" + side.str() + ")";
  }
  if (!side.symbolic_parts.empty()) {
    return std::string("value correlated with undefined input (") + side.str() + ")";
  }
  if (side.concrete_part != expected) {
    return std::string(side_name) + " side holds " + side.concrete_part.str() + ", expected " +
           expected.str();
  }
  return std::nullopt;
}

namespace {

struct CpRun {
  const ITree& tree;
  int ablate_level;
  QueryLedger* ledger;
  Trace* trace;
  int next_id = 100;
  ConjugateOracle leaf_oracle;
  std::vector<ConjugateOracle> g_oracles;  // index k-1

  // Recursive sub-circuit realizing the conjugate oracle F_k.
  void run_level(int k, std::vector<ConjugateRegister*> controls, ConjugateRegister& target) {
    const int l = tree.depth();
    ConjugateRegister anc_x = ConjugateRegister::phase(
        next_id++, "X" + std::to_string(k + 1), BitString::zeros(tree.length(k + 1)));
    ConjugateRegister anc_y =
        ConjugateRegister::phase(next_id++, "Y'" + std::to_string(k), BitString(1, 1));

    std::vector<ConjugateRegister*> child_controls = controls;
    child_controls.push_back(&anc_x);

    apply_f(k + 1, child_controls, anc_y);
    hadamard_pair(anc_x);
    cp_apply(g_oracles[static_cast<std::size_t>(k - 1)], child_controls, target, ledger, trace);
    if (k != ablate_level) {
      hadamard_pair(anc_x);
      apply_f(k + 1, child_controls, anc_y);
    } else if (trace) {
      trace->log("ablate", "level " + std::to_string(k) + ": uncomputation skipped");
    }

    if (auto violation = discard_check(anc_x, /*phase_side=*/true,
                                       BitString::zeros(tree.length(k + 1)))) {
      throw DiscardError{k, anc_x.name, *violation};
    }
    if (auto violation = discard_check(anc_y, /*phase_side=*/true, BitString(1, 1))) {
      throw DiscardError{k, anc_y.name, *violation};
    }
    if (trace) trace->log("discard", "level " + std::to_string(k) + " ancillas verified");
  }

  void apply_f(int k, std::vector<ConjugateRegister*> controls, ConjugateRegister& target) {
    if (k == tree.depth() + 1) {
      cp_apply(leaf_oracle, std::move(controls), target, ledger, trace);
    } else {
      run_level(k, std::move(controls), target);
    }
  }
};

}  // namespace

CpRfsOutcome cp_rfs(const ITree& tree, const BitString& x1, int ablate_level, QueryLedger* ledger,
                    Trace* trace) {
  if (x1.width() != tree.length(1)) throw std::invalid_argument("cp_rfs: x1 width mismatch");
  if (ablate_level < 0 || ablate_level > tree.depth()) {
    throw std::invalid_argument("cp_rfs: ablation level out of range");
  }

  CpRun run{tree, ablate_level, ledger, trace, 100, ConjugateOracle::tree_f(tree), {}};
  for (int k = 1; k <= tree.depth(); ++k) run.g_oracles.push_back(ConjugateOracle::tree_g(tree, k));

  ConjugateRegister top = ConjugateRegister::computational(1, "X1", x1);
  ConjugateRegister answer = ConjugateRegister::computational(2, "Y", BitString(0, 1));

  try {
    run.run_level(1, {&top}, answer);
  } catch (const DiscardError& err) {
    return err;
  }
  if (!answer.x.is_concrete()) {
    throw std::runtime_error("cp_rfs: answer is not well-defined: " + answer.x.str());
  }
  return static_cast<int>(answer.x.concrete_part.value() & 1);
}

}  // namespace rfs::conjugate
