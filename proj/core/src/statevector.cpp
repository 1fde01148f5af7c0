#include "rfs/statevector.hpp"

#include <cmath>
#include <stdexcept>

#include "rfs/instance.hpp"  // detail::mix64 for seeded sampling

namespace rfs {

RegisterLayout::RegisterLayout(std::vector<std::pair<std::string, int>> registers)
    : registers_(std::move(registers)) {
  int offset = 0;
  for (const auto& [name, width] : registers_) {
    if (width < 1) throw std::invalid_argument("RegisterLayout: width must be >= 1");
    if (index_.count(name)) throw std::invalid_argument("RegisterLayout: duplicate register " + name);
    index_[name] = {offset, width};
    offset += width;
  }
  total_width_ = offset;
}

int RegisterLayout::width(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end()) throw std::invalid_argument("unknown register " + name);
  return it->second.second;
}

int RegisterLayout::offset(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end()) throw std::invalid_argument("unknown register " + name);
  return it->second.first;
}

bool RegisterLayout::has(const std::string& name) const { return index_.count(name) > 0; }

StateVector::StateVector(RegisterLayout layout, int qubit_cap) : layout_(std::move(layout)) {
  const int m = layout_.total_width();
  if (m < 1) throw std::invalid_argument("StateVector: empty layout");
  if (m > qubit_cap) {
    throw std::invalid_argument("StateVector: " + std::to_string(m) +
                                " qubits exceeds cap of " + std::to_string(qubit_cap));
  }
  amps_.assign(std::size_t{1} << m, {0.0, 0.0});
  amps_[0] = {1.0, 0.0};
}

StateVector StateVector::basis(RegisterLayout layout, const std::map<std::string, BitString>& values,
                               int qubit_cap) {
  StateVector state(std::move(layout), qubit_cap);
  state.set_basis(values);
  return state;
}

void StateVector::set_basis(const std::map<std::string, BitString>& values) {
  const int m = layout_.total_width();
  std::uint64_t index = 0;
  for (const auto& [name, width] : layout_.registers()) {
    auto it = values.find(name);
    const BitString v = it == values.end() ? BitString::zeros(width) : it->second;
    if (v.width() != width) {
      throw std::invalid_argument("set_basis: width mismatch for register " + name);
    }
    index |= v.value() << (m - layout_.offset(name) - width);
  }
  amps_.assign(amps_.size(), {0.0, 0.0});
  amps_[index] = {1.0, 0.0};
}

void StateVector::apply_hadamard_qubit(int q) {
  const int m = layout_.total_width();
  if (q < 0 || q >= m) throw std::invalid_argument("hadamard: qubit out of range");
  const std::uint64_t mask = std::uint64_t{1} << (m - 1 - q);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  const std::uint64_t size = amps_.size();
  for (std::uint64_t i = 0; i < size; ++i) {
    if (i & mask) continue;
    const std::uint64_t j = i | mask;
    const std::complex<double> a = amps_[i];
    const std::complex<double> b = amps_[j];
    amps_[i] = (a + b) * inv_sqrt2;
    amps_[j] = (a - b) * inv_sqrt2;
  }
}

void StateVector::apply_hadamards(const std::string& register_name) {
  const int off = layout_.offset(register_name);
  const int w = layout_.width(register_name);
  for (int q = off; q < off + w; ++q) apply_hadamard_qubit(q);
}

BitString StateVector::extract_register(std::uint64_t basis_index, const std::string& name) const {
  const int m = layout_.total_width();
  const int off = layout_.offset(name);
  const int w = layout_.width(name);
  const std::uint64_t shifted = basis_index >> (m - off - w);
  const std::uint64_t mask = w == 64 ? ~0ULL : ((1ULL << w) - 1);
  return BitString(shifted & mask, w);
}

void StateVector::apply_oracle(const std::vector<std::string>& controls, const std::string& target,
                               const std::function<int(const std::vector<BitString>&)>& fn,
                               QueryLedger* ledger, const std::string& oracle_name, int level) {
  const int m = layout_.total_width();
  if (layout_.width(target) != 1) {
    throw std::invalid_argument("apply_oracle: target must be a single qubit");
  }
  const std::uint64_t target_mask = std::uint64_t{1} << (m - 1 - layout_.offset(target));

  if (ledger) ledger->record(oracle_name, level);

  // Cache the function value per control assignment so each distinct control
  // value is evaluated once per application.
  std::map<std::uint64_t, int> fn_cache;
  std::vector<BitString> control_values(controls.size(), BitString::zeros(1));

  const std::uint64_t size = amps_.size();
  for (std::uint64_t i = 0; i < size; ++i) {
    if (i & target_mask) continue;  // visit each (x, y=0)/(x, y=1) pair once
    std::uint64_t control_key = 0;
    for (std::size_t c = 0; c < controls.size(); ++c) {
      const BitString v = extract_register(i, controls[c]);
      control_values[c] = v;
      control_key = (control_key << v.width()) | v.value();
    }
    int bit;
    if (auto it = fn_cache.find(control_key); it != fn_cache.end()) {
      bit = it->second;
    } else {
      bit = fn(control_values);
      if (bit != 0 && bit != 1) throw std::invalid_argument("apply_oracle: fn must return 0 or 1");
      fn_cache.emplace(control_key, bit);
    }
    if (bit) std::swap(amps_[i], amps_[i | target_mask]);
  }
}

std::vector<double> StateVector::marginal(const std::string& register_name) const {
  const int w = layout_.width(register_name);
  std::vector<double> probs(std::size_t{1} << w, 0.0);
  for (std::uint64_t i = 0; i < amps_.size(); ++i) {
    const double p = std::norm(amps_[i]);
    if (p == 0.0) continue;
    probs[extract_register(i, register_name).value()] += p;
  }
  return probs;
}

std::map<BitString, double> StateVector::measure_register(const std::string& register_name) const {
  const int w = layout_.width(register_name);
  std::map<BitString, double> dist;
  const std::vector<double> probs = marginal(register_name);
  for (std::uint64_t v = 0; v < probs.size(); ++v) {
    dist[BitString(v, w)] = probs[v];
  }
  return dist;
}

BitString StateVector::sample(const std::string& register_name, std::uint64_t seed) const {
  const int w = layout_.width(register_name);
  const std::vector<double> probs = marginal(register_name);
  // Seeded inverse-CDF draw; deterministic for a fixed seed.
  const double u =
      static_cast<double>(detail::mix64(seed ^ 0xA5A5A5A5A5A5A5A5ULL) >> 11) * 0x1.0p-53;
  double acc = 0.0;
  for (std::uint64_t v = 0; v < probs.size(); ++v) {
    acc += probs[v];
    if (u < acc) return BitString(v, w);
  }
  return BitString(probs.size() - 1, w);
}

double StateVector::probability_of(const std::string& register_name, const BitString& value) const {
  if (value.width() != layout_.width(register_name)) {
    throw std::invalid_argument("probability_of: width mismatch");
  }
  return marginal(register_name)[value.value()];
}

bool StateVector::register_is_value(const std::string& register_name, const BitString& value,
                                    double tol) const {
  return probability_of(register_name, value) >= 1.0 - tol;
}

StateVector StateVector::discard_register(const std::string& register_name, const BitString& expected,
                                          double tol) const {
  if (!register_is_value(register_name, expected, tol)) {
    throw std::runtime_error("discard violation: register " + register_name +
                             " is not in basis state " + expected.str());
  }
  std::vector<std::pair<std::string, int>> remaining;
  for (const auto& reg : layout_.registers()) {
    if (reg.first != register_name) remaining.push_back(reg);
  }
  if (remaining.empty()) throw std::invalid_argument("discard_register: cannot drop last register");

  const int m = layout_.total_width();
  const int off = layout_.offset(register_name);
  const int w = layout_.width(register_name);
  const int low_bits = m - off - w;

  StateVector out{RegisterLayout(remaining), m};
  out.amps_.assign(std::size_t{1} << (m - w), {0.0, 0.0});
  const std::uint64_t low_mask = low_bits == 0 ? 0 : ((1ULL << low_bits) - 1);
  double kept = 0.0;
  for (std::uint64_t i = 0; i < amps_.size(); ++i) {
    if (extract_register(i, register_name) != expected) continue;
    const std::uint64_t reduced = ((i >> (low_bits + w)) << low_bits) | (i & low_mask);
    out.amps_[reduced] = amps_[i];
    kept += std::norm(amps_[i]);
  }
  // Renormalize the projected state.
  const double scale = 1.0 / std::sqrt(kept);
  for (auto& a : out.amps_) a *= scale;
  return out;
}

double StateVector::norm() const {
  double s = 0.0;
  for (const auto& a : amps_) s += std::norm(a);
  return std::sqrt(s);
}

std::vector<std::tuple<std::uint64_t, double, double>> StateVector::dump(double cutoff) const {
  std::vector<std::tuple<std::uint64_t, double, double>> out;
  for (std::uint64_t i = 0; i < amps_.size(); ++i) {
    if (std::abs(amps_[i]) > cutoff) {
      out.emplace_back(i, amps_[i].real(), amps_[i].imag());
    }
  }
  return out;
}

}  // namespace rfs
