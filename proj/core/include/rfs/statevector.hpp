#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "rfs/bitmath.hpp"
#include "rfs/ledger.hpp"

namespace rfs {

/// Named, contiguous qubit registers.  Qubit 0 is the most significant bit of
/// the basis index, so the concatenated textual bitstrings of all registers
/// read as the binary index of the amplitude.
class RegisterLayout {
 public:
  RegisterLayout() = default;
  explicit RegisterLayout(std::vector<std::pair<std::string, int>> registers);

  int total_width() const { return total_width_; }
  int width(const std::string& name) const;
  int offset(const std::string& name) const;  // index of the register's first qubit
  bool has(const std::string& name) const;
  const std::vector<std::pair<std::string, int>>& registers() const { return registers_; }

 private:
  std::vector<std::pair<std::string, int>> registers_;
  std::map<std::string, std::pair<int, int>> index_;  // name -> (offset, width)
  int total_width_ = 0;
};

/// Dense statevector over a register layout.  Gate set is Hadamard layers and
/// phase-preserving basis-permutation oracles, which is all RFS needs.
class StateVector {
 public:
  static constexpr int kDefaultQubitCap = 24;
  static constexpr double kNormTol = 1e-9;

  explicit StateVector(RegisterLayout layout, int qubit_cap = kDefaultQubitCap);

  /// Computational basis state from per-register values.
  static StateVector basis(RegisterLayout layout,
                           const std::map<std::string, BitString>& values,
                           int qubit_cap = kDefaultQubitCap);

  const RegisterLayout& layout() const { return layout_; }
  int num_qubits() const { return layout_.total_width(); }
  const std::vector<std::complex<double>>& amplitudes() const { return amps_; }

  void set_basis(const std::map<std::string, BitString>& values);

  void apply_hadamard_qubit(int q);
  void apply_hadamards(const std::string& register_name);

  /// U_f: amplitude of (x, y) moves to (x, y ^ fn(x)); phases carried
  /// unchanged.  One ledger tick per application, regardless of superposition
  /// size.
  void apply_oracle(const std::vector<std::string>& controls, const std::string& target,
                    const std::function<int(const std::vector<BitString>&)>& fn,
                    QueryLedger* ledger = nullptr, const std::string& oracle_name = "U",
                    int level = 0);

  /// Marginal distribution over a register's computational basis values.
  std::vector<double> marginal(const std::string& register_name) const;
  std::map<BitString, double> measure_register(const std::string& register_name) const;
  BitString sample(const std::string& register_name, std::uint64_t seed) const;
  double probability_of(const std::string& register_name, const BitString& value) const;

  /// True when (at least 1 - tol of) the probability mass has the register at
  /// the given value, i.e. the register is in a product basis state.
  bool register_is_value(const std::string& register_name, const BitString& value,
                         double tol = kNormTol) const;

  /// Verify the register holds the expected basis value, then project it out
  /// and drop its qubits.  Entangled or wrong-valued discard throws.
  StateVector discard_register(const std::string& register_name, const BitString& expected,
                               double tol = kNormTol) const;

  double norm() const;

  /// Nonzero amplitudes above the cutoff, as (basis index, re, im).
  std::vector<std::tuple<std::uint64_t, double, double>> dump(double cutoff = 1e-12) const;

  BitString extract_register(std::uint64_t basis_index, const std::string& register_name) const;

 private:
  RegisterLayout layout_;
  std::vector<std::complex<double>> amps_;
};

}  // namespace rfs
