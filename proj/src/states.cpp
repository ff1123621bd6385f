#include "projlab/states.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "projlab/gates.hpp"

namespace projlab {

namespace {

RegisterLayout qubits(const std::vector<std::string>& names) {
  std::vector<Register> regs;
  for (const auto& n : names) regs.push_back({n, 2});
  return RegisterLayout(regs);
}

// Gaussian pairs from seeded mt19937_64; deterministic for a fixed build.
struct GaussianStream {
  explicit GaussianStream(std::uint64_t seed) : engine(seed) {}
  double next() {
    if (have) {
      have = false;
      return spare;
    }
    double u1 = std::generate_canonical<double, 53>(engine);
    double u2 = std::generate_canonical<double, 53>(engine);
    u1 = std::max(u1, 1e-300);
    double mag = std::sqrt(-2.0 * std::log(u1));
    spare = mag * std::sin(2.0 * std::numbers::pi * u2);
    have = true;
    return mag * std::cos(2.0 * std::numbers::pi * u2);
  }
  std::mt19937_64 engine;
  double spare = 0;
  bool have = false;
};

}  // namespace

Vector random_state_vector(std::uint64_t seed, long dim) {
  GaussianStream g(seed);
  Vector v(dim);
  for (long i = 0; i < dim; ++i) v(i) = Complex(g.next(), g.next());
  v /= v.norm();
  return v;
}

Matrix random_unitary(std::uint64_t seed, long dim) {
  GaussianStream g(seed);
  Matrix m(dim, dim);
  for (long i = 0; i < dim; ++i) {
    for (long j = 0; j < dim; ++j) m(i, j) = Complex(g.next(), g.next());
  }
  Eigen::HouseholderQR<Matrix> qr(m);
  Matrix q = qr.householderQ();
  // Fix the phase of each column so the distribution is Haar.
  Matrix rmat = qr.matrixQR().triangularView<Eigen::Upper>();
  for (long i = 0; i < dim; ++i) {
    Complex d = rmat(i, i);
    q.col(i) *= d / std::abs(d);
  }
  return q;
}

Matrix random_hermitian(std::uint64_t seed, long dim) {
  GaussianStream g(seed);
  Matrix m(dim, dim);
  for (long i = 0; i < dim; ++i) {
    for (long j = 0; j < dim; ++j) m(i, j) = Complex(g.next(), g.next());
  }
  return 0.5 * (m + m.adjoint());
}

NamedState make_bell() {
  RegisterLayout layout = qubits({"R", "S"});
  Vector v = Vector::Zero(4);
  v(0) = v(3) = 1.0 / std::sqrt(2.0);
  return {"bell", ComplexTensorState(layout, v), {"R"}};
}

NamedState make_singlet() {
  RegisterLayout layout = qubits({"A", "B"});
  Vector v = Vector::Zero(4);
  v(1) = 1.0 / std::sqrt(2.0);
  v(2) = -1.0 / std::sqrt(2.0);
  return {"singlet", ComplexTensorState(layout, v), {"A"}};
}

NamedState make_w(int n) {
  if (n < 2) throw ParameterError("W state needs >= 2 qubits");
  std::vector<std::string> names;
  for (int i = 1; i <= n; ++i) names.push_back("Q" + std::to_string(i));
  RegisterLayout layout = qubits(names);
  Vector v = Vector::Zero(layout.total_dim());
  const double amp = 1.0 / std::sqrt(static_cast<double>(n));
  for (int i = 0; i < n; ++i) v(1L << (n - 1 - i)) = amp;
  std::vector<std::string> cut{names.begin(),
                               names.begin() + std::min(n - 1, 2)};
  return {"w", ComplexTensorState(layout, v), cut};
}

NamedState make_ghz(int n) {
  if (n < 2) throw ParameterError("GHZ state needs >= 2 qubits");
  std::vector<std::string> names;
  for (int i = 1; i <= n; ++i) names.push_back("Q" + std::to_string(i));
  RegisterLayout layout = qubits(names);
  Vector v = Vector::Zero(layout.total_dim());
  v(0) = v(layout.total_dim() - 1) = 1.0 / std::sqrt(2.0);
  return {"ghz", ComplexTensorState(layout, v), {names[0]}};
}

NamedState make_double_bell() {
  RegisterLayout layout = qubits({"R", "S1", "S2", "S3"});
  Vector bell = Vector::Zero(4);
  bell(0) = bell(3) = 1.0 / std::sqrt(2.0);
  Vector v = Vector::Zero(16);
  // |Phi+>_{R S1} (x) |Phi+>_{S2 S3}: index order (R, S1, S2, S3).
  for (long a = 0; a < 4; ++a) {
    for (long b = 0; b < 4; ++b) {
      long idx = (a >> 1) * 8 + (a & 1) * 4 + (b >> 1) * 2 + (b & 1);
      v(idx) = bell(a) * bell(b);
    }
  }
  return {"double_bell", ComplexTensorState(layout, v), {"R"}};
}

NamedState make_pizza() {
  std::vector<std::string> names{"Q1", "Q2", "Q3", "Q4", "Q5", "Q6"};
  RegisterLayout layout = qubits(names);
  Vector v = Vector::Zero(64);
  const double amp = 1.0 / std::sqrt(8.0);
  auto set = [&](const char* bits, double sign) {
    long idx = 0;
    for (const char* c = bits; *c; ++c) idx = idx * 2 + (*c - '0');
    v(idx) = sign * amp;
  };
  set("000111", +1);
  set("111000", -1);
  set("001110", -1);
  set("110001", +1);
  set("010101", -1);
  set("101010", +1);
  set("011100", +1);
  set("100011", -1);
  return {"pizza", ComplexTensorState(layout, v), {"Q1", "Q2", "Q3"}};
}

NamedState make_werner(double p, long d) {
  if (p < 0.0 || p > 1.0) throw ParameterError("Werner p must lie in [0,1]");
  if (d < 2) throw ParameterError("Werner local dimension must be >= 2");
  RegisterLayout layout({{"A", d}, {"B", d}});
  Matrix f = gates::swap_registers(d);
  Matrix id = Matrix::Identity(d * d, d * d);
  Matrix proj_s = 0.5 * (id + f);
  Matrix proj_a = 0.5 * (id - f);
  double dim_s = d * (d + 1) / 2.0;
  double dim_a = d * (d - 1) / 2.0;
  Matrix rho = (p / dim_s) * proj_s + ((1.0 - p) / dim_a) * proj_a;
  return {"werner", DensityOperator(layout, rho), {"A"}};
}

NamedState make_random_pure(std::uint64_t seed, const std::vector<long>& dims) {
  if (dims.empty()) throw ParameterError("random state needs dimensions");
  std::vector<Register> regs;
  for (size_t i = 0; i < dims.size(); ++i) {
    regs.push_back({"Q" + std::to_string(i + 1), dims[i]});
  }
  RegisterLayout layout(regs);
  Vector v = random_state_vector(seed, layout.total_dim());
  std::vector<std::string> cut{layout.reg(0).name};
  return {"random", ComplexTensorState(layout, v), cut};
}

NamedState make_basis(const std::string& digits) {
  if (digits.empty()) throw ParameterError("empty basis string");
  std::vector<std::string> names;
  std::vector<long> vals;
  for (size_t i = 0; i < digits.size(); ++i) {
    if (digits[i] != '0' && digits[i] != '1') {
      throw ParameterError("basis string must be binary");
    }
    names.push_back("Q" + std::to_string(i + 1));
    vals.push_back(digits[i] - '0');
  }
  RegisterLayout layout = qubits(names);
  return {"basis:" + digits, ComplexTensorState::basis_state(layout, vals),
          {names[0]}};
}

NamedState make_state(const std::string& spec) {
  if (spec == "bell") return make_bell();
  if (spec == "singlet") return make_singlet();
  if (spec == "w") return make_w(3);
  if (spec == "double_bell") return make_double_bell();
  if (spec == "pizza") return make_pizza();
  if (spec.rfind("w", 0) == 0 && spec.size() > 1 &&
      std::isdigit(static_cast<unsigned char>(spec[1]))) {
    return make_w(std::stoi(spec.substr(1)));
  }
  if (spec.rfind("ghz", 0) == 0) {
    return make_ghz(spec.size() > 3 ? std::stoi(spec.substr(3)) : 3);
  }
  if (spec.rfind("werner:", 0) == 0) {
    std::string args = spec.substr(7);
    auto comma = args.find(',');
    double p = std::stod(args.substr(0, comma));
    long d = comma == std::string::npos ? 2 : std::stol(args.substr(comma + 1));
    return make_werner(p, d);
  }
  if (spec.rfind("random:", 0) == 0) {
    std::string args = spec.substr(7);
    auto comma = args.find(',');
    std::uint64_t seed = std::stoull(args.substr(0, comma));
    std::vector<long> dims{2, 2};
    if (comma != std::string::npos) {
      dims.clear();
      std::stringstream ss(args.substr(comma + 1));
      std::string tok;
      while (std::getline(ss, tok, 'x')) dims.push_back(std::stol(tok));
    }
    return make_random_pure(seed, dims);
  }
  if (spec.rfind("basis:", 0) == 0) return make_basis(spec.substr(6));
  throw ParameterError("unknown state spec '" + spec + "'");
}

}  // namespace projlab
