#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "rfs/bitmath.hpp"
#include "rfs/instance.hpp"
#include "rfs/ledger.hpp"

namespace rfs::conjugate {

/// Symbolic bitstring expression: a concrete value, the (unknowable)
/// computational value of a register that currently has a well-defined phase,
/// or a secret evaluated at such expressions.  Structural equality is what
/// makes uncomputation cancel exactly.
class Expr {
 public:
  enum class Kind { Bits, Symbol, Secret };

  static Expr bits(BitString b);
  static Expr symbol(int register_id, std::uint64_t epoch, int width);
  static Expr secret(int level, std::vector<Expr> args, int width);
  static Expr opaque(std::string repr, int width);

  Kind kind() const { return kind_; }
  int width() const { return width_; }
  const BitString& as_bits() const;
  bool is_concrete() const { return kind_ == Kind::Bits; }

  const std::string& repr() const { return repr_; }
  friend bool operator==(const Expr& a, const Expr& b) { return a.repr_ == b.repr_; }
  friend bool operator<(const Expr& a, const Expr& b) { return a.repr_ < b.repr_; }

 private:
  Kind kind_ = Kind::Bits;
  int width_ = 1;
  BitString bits_{0, 1};
  std::string repr_;
};

/// The unpromised phase shift X_j an oracle adds to control register j.
/// Identity is (oracle, fingerprint of the other controls' computational
/// values, affected register index); equal tokens cancel modulo 2.
struct KickbackToken {
  std::string oracle_id;
  std::string fingerprint;
  int register_index;

  friend bool operator==(const KickbackToken&, const KickbackToken&) = default;
  friend auto operator<=>(const KickbackToken&, const KickbackToken&) = default;
  std::string str() const;
};

/// One side of a conjugate pair: undefined, or a value represented as a
/// concrete part XOR an XOR-set of symbolic parts, shifted by a set of live
/// kickback tokens.  Identical symbolic parts and identical tokens cancel in
/// pairs, which is exactly what uncomputation relies on.
struct Side {
  bool is_defined = false;
  BitString concrete_part{0, 1};
  std::set<Expr> symbolic_parts;
  std::set<KickbackToken> tokens;

  static Side undefined() { return Side{}; }
  static Side concrete(BitString value);

  bool defined() const { return is_defined; }
  bool is_concrete() const { return is_defined && symbolic_parts.empty() && tokens.empty(); }
  /// Returns true if the token was added, false if it cancelled an equal one.
  bool add_token(KickbackToken t);
  /// XOR the shift into the value; equal symbolic parts cancel.
  void add_value(const Expr& shift);
  Expr as_expr() const;  // requires defined()
  std::string str() const;
};

/// Conjugate pair [x, chi]: at most one side holds a well-defined value; the
/// Hadamard swaps the sides.
struct ConjugateRegister {
  int id = 0;
  std::string name;
  int width = 1;
  Side x;
  Side chi;
  std::uint64_t epoch = 0;  // bumped on Hadamard and concrete writes

  static ConjugateRegister computational(int id, std::string name, BitString value);
  static ConjugateRegister phase(int id, std::string name, BitString chi_value);

  Expr x_expr() const;  // a fresh-epoch symbol when x is undefined
};

/// Hadamard on a conjugate pair: swap the two sides.
void hadamard_pair(ConjugateRegister& reg);

/// A conjugate pair oracle [f, f-check]: forward map plus the kickback law.
/// The promised concrete shift applies to the last control, which is the
/// content of the tree's linearity promise; every other control in the phase
/// basis receives an opaque token.
struct ConjugateOracle {
  std::string id;
  int num_controls = 1;
  std::vector<int> control_widths;
  std::function<int(std::span<const BitString>)> forward;  // f(x_1..x_k)
  // Level of the effective F oracle (secret s_{level-1} shifts the last
  // control); 0 means a plain Fourier Sampling oracle with a fixed secret.
  int f_level = 0;
  std::function<BitString(std::span<const BitString>)> secret_fn;  // s_{level-1}(prefix)
  // G-type oracles have no kickback promise of their own; when queried in
  // phase mode with the derivation promise satisfied they act as F_{k}.
  bool is_g = false;
  int g_level = 0;

  static ConjugateOracle fourier_sampling(const BitString& secret);
  static ConjugateOracle tree_f(const ITree& tree);          // F_{l+1}
  static ConjugateOracle tree_g(const ITree& tree, int k);   // G_k
};

struct TraceEntry {
  std::string step;
  std::string detail;
};

struct Trace {
  std::vector<TraceEntry> entries;
  int tokens_created = 0;
  int tokens_cancelled = 0;
  void log(std::string step, std::string detail) {
    entries.push_back({std::move(step), std::move(detail)});
  }
};

/// Applies a conjugate pair oracle.  Computational query: all control x sides
/// concrete and target y concrete.  Phase query: target upsilon concrete,
/// shifts land on the phase-defined controls.  Anything else is ill-posed.
void cp_apply(const ConjugateOracle& oracle, std::vector<ConjugateRegister*> controls,
              ConjugateRegister& target, QueryLedger* ledger = nullptr, Trace* trace = nullptr);

/// Phase Kickback Fourier Sampling: one phase query recovers the secret.
BitString cp_fs(const ConjugateOracle& oracle, int n, QueryLedger& ledger, Trace* trace = nullptr);

struct DiscardError {
  int level = 0;
  std::string register_name;
  std::string reason;
  std::string str() const;
};

using CpRfsOutcome = std::variant<int, DiscardError>;

/// Phase Kickback Recursive Fourier Sampling.  ablate_level = 0 runs the full
/// algorithm; a nonzero level skips that level's uncomputation steps, and the
/// discard-safety analysis then reports why the ancilla cannot be dropped.
CpRfsOutcome cp_rfs(const ITree& tree, const BitString& x1, int ablate_level = 0,
                    QueryLedger* ledger = nullptr, Trace* trace = nullptr);

/// ok (empty) or a violation description, per the discard-safety rules: the
/// named side must be concrete at its documented value, token-free, and
/// independent of undefined inputs.
std::optional<std::string> discard_check(const ConjugateRegister& reg, bool phase_side,
                                         const BitString& expected);

}  // namespace rfs::conjugate
