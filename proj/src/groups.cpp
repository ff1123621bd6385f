#include "projlab/groups.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <unsupported/Eigen/KroneckerProduct>

#include "projlab/gates.hpp"

namespace projlab {

Permutation Permutation::identity(int k) {
  if (k < 1) throw GroupError("permutation degree must be >= 1");
  std::vector<int> images(k);
  std::iota(images.begin(), images.end(), 0);
  return Permutation(std::move(images));
}

Permutation Permutation::transposition(int k, int a, int b) {
  if (a < 1 || b < 1 || a > k || b > k || a == b) {
    throw GroupError("invalid transposition letters");
  }
  Permutation p = identity(k);
  std::swap(p.images_[a - 1], p.images_[b - 1]);
  return p;
}

Permutation Permutation::from_one_line(const std::vector<int>& images_1based) {
  std::vector<int> images(images_1based.size());
  std::vector<bool> seen(images_1based.size(), false);
  for (size_t i = 0; i < images_1based.size(); ++i) {
    int v = images_1based[i] - 1;
    if (v < 0 || v >= static_cast<int>(images_1based.size()) || seen[v]) {
      throw GroupError("images are not a bijection");
    }
    seen[v] = true;
    images[i] = v;
  }
  return Permutation(std::move(images));
}

Permutation Permutation::inverse() const {
  std::vector<int> inv(images_.size());
  for (size_t i = 0; i < images_.size(); ++i) {
    inv[images_[i]] = static_cast<int>(i);
  }
  return Permutation(std::move(inv));
}

bool Permutation::is_identity() const {
  for (size_t i = 0; i < images_.size(); ++i) {
    if (images_[i] != static_cast<int>(i)) return false;
  }
  return true;
}

int Permutation::sign() const {
  // Parity from cycle decomposition.
  std::vector<bool> visited(images_.size(), false);
  int transpositions = 0;
  for (size_t start = 0; start < images_.size(); ++start) {
    if (visited[start]) continue;
    int len = 0;
    size_t cur = start;
    while (!visited[cur]) {
      visited[cur] = true;
      cur = static_cast<size_t>(images_[cur]);
      ++len;
    }
    transpositions += len - 1;
  }
  return transpositions % 2 == 0 ? 1 : -1;
}

std::string Permutation::cycles() const {
  std::vector<bool> visited(images_.size(), false);
  std::ostringstream out;
  bool any = false;
  for (size_t start = 0; start < images_.size(); ++start) {
    if (visited[start] || images_[start] == static_cast<int>(start)) {
      visited[start] = true;
      continue;
    }
    out << '(';
    size_t cur = start;
    bool first = true;
    while (!visited[cur]) {
      visited[cur] = true;
      if (!first) out << ' ';
      out << cur + 1;
      first = false;
      cur = static_cast<size_t>(images_[cur]);
    }
    out << ')';
    any = true;
  }
  return any ? out.str() : "e";
}

Permutation Permutation::parse_cycles(int k, const std::string& text) {
  Permutation result = identity(k);
  const std::string& trimmed = text;
  size_t i = 0;
  auto skip_ws = [&] {
    while (i < trimmed.size() &&
           std::isspace(static_cast<unsigned char>(trimmed[i]))) {
      ++i;
    }
  };
  skip_ws();
  if (i < trimmed.size() && (trimmed[i] == 'e' || trimmed[i] == 'E')) {
    return result;
  }
  // Cycles listed left to right act left to right in our convention: the
  // string "(1 2)(2 3)" denotes (1 2) composed after (2 3).
  std::vector<Permutation> cycles_found;
  while (i < trimmed.size()) {
    skip_ws();
    if (i >= trimmed.size()) break;
    if (trimmed[i] != '(') throw GroupError("expected '(' in cycle notation");
    ++i;
    std::vector<int> letters;
    while (i < trimmed.size() && trimmed[i] != ')') {
      skip_ws();
      if (std::isdigit(static_cast<unsigned char>(trimmed[i]))) {
        int v = 0;
        while (i < trimmed.size() &&
               std::isdigit(static_cast<unsigned char>(trimmed[i]))) {
          v = v * 10 + (trimmed[i] - '0');
          ++i;
        }
        letters.push_back(v);
      } else if (trimmed[i] == ',' ||
                 std::isspace(static_cast<unsigned char>(trimmed[i]))) {
        ++i;
      } else {
        throw GroupError("unexpected character in cycle notation");
      }
    }
    if (i >= trimmed.size()) throw GroupError("unterminated cycle");
    ++i;  // ')'
    if (letters.size() < 2) throw GroupError("cycle needs >= 2 letters");
    std::vector<int> images(k);
    std::iota(images.begin(), images.end(), 1);
    for (size_t j = 0; j < letters.size(); ++j) {
      int from = letters[j];
      int to = letters[(j + 1) % letters.size()];
      if (from < 1 || from > k) throw GroupError("cycle letter out of range");
      images[from - 1] = to;
    }
    cycles_found.push_back(from_one_line(images));
  }
  for (const auto& c : cycles_found) result = result * c;
  return result;
}

Permutation operator*(const Permutation& a, const Permutation& b) {
  if (a.degree() != b.degree()) {
    throw GroupError("degree mismatch in permutation composition");
  }
  std::vector<int> images(a.images_.size());
  for (size_t i = 0; i < images.size(); ++i) {
    images[i] = a.images_[b.images_[i]];
  }
  return Permutation(std::move(images));
}

int sign(const Permutation& p) { return p.sign(); }

FiniteGroup::FiniteGroup(std::vector<Permutation> elements)
    : elements_(std::move(elements)) {
  if (elements_.empty()) throw GroupError("group must be nonempty");
  degree_ = elements_[0].degree();
  bool has_identity = false;
  for (size_t i = 0; i < elements_.size(); ++i) {
    if (elements_[i].degree() != degree_) {
      throw GroupError("mixed permutation degrees");
    }
    if (!lookup_.emplace(elements_[i], static_cast<long>(i)).second) {
      throw GroupError("duplicate group element");
    }
    if (elements_[i].is_identity()) {
      has_identity = true;
      identity_index_ = static_cast<long>(i);
    }
  }
  if (!has_identity) throw GroupError("group lacks the identity");
  for (const auto& a : elements_) {
    if (!lookup_.count(a.inverse())) {
      throw GroupError("group not closed under inverses");
    }
    for (const auto& b : elements_) {
      if (!lookup_.count(a * b)) {
        throw GroupError("group not closed under composition");
      }
    }
  }
}

FiniteGroup FiniteGroup::symmetric(int k) {
  if (k < 1 || k > 6) {
    throw CapacityError("symmetric group supported for 1 <= k <= 6");
  }
  std::vector<int> images(k);
  std::iota(images.begin(), images.end(), 1);
  std::vector<Permutation> elements;
  do {
    elements.push_back(Permutation::from_one_line(images));
  } while (std::next_permutation(images.begin(), images.end()));
  std::sort(elements.begin(), elements.end());
  return FiniteGroup(std::move(elements));
}

FiniteGroup FiniteGroup::cyclic(int k) {
  if (k < 1 || k > 6) throw CapacityError("cyclic group supported for k <= 6");
  std::vector<int> images(k);
  for (int i = 0; i < k; ++i) images[i] = (i + 1) % k + 1;
  Permutation gen = Permutation::from_one_line(images);
  std::vector<Permutation> elements{Permutation::identity(k)};
  Permutation cur = gen;
  while (!cur.is_identity()) {
    elements.push_back(cur);
    cur = gen * cur;
  }
  std::sort(elements.begin(), elements.end());
  return FiniteGroup(std::move(elements));
}

FiniteGroup FiniteGroup::trivial(int k) {
  return FiniteGroup({Permutation::identity(k)});
}

FiniteGroup FiniteGroup::from_elements(std::vector<Permutation> elements) {
  return FiniteGroup(std::move(elements));
}

long FiniteGroup::index_of(const Permutation& p) const {
  auto it = lookup_.find(p);
  if (it == lookup_.end()) {
    throw GroupError("permutation is not a group element");
  }
  return it->second;
}

bool FiniteGroup::contains(const Permutation& p) const {
  return lookup_.count(p) > 0;
}

long FiniteGroup::compose_index(long a, long b) const {
  return index_of(elements_[a] * elements_[b]);
}

FiniteGroup symmetric_group(int k) { return FiniteGroup::symmetric(k); }

UnitaryRep::UnitaryRep(FiniteGroup group, RegisterLayout data_layout,
                       std::vector<Matrix> matrices)
    : group_(std::move(group)),
      data_layout_(std::move(data_layout)),
      matrices_(std::move(matrices)) {
  if (static_cast<long>(matrices_.size()) != group_.order()) {
    throw GroupError("need one matrix per group element");
  }
  const long d = data_layout_.total_dim();
  for (const auto& m : matrices_) {
    if (m.rows() != d || m.cols() != d) {
      throw LayoutError("representation matrix dimension mismatch");
    }
    if ((m.adjoint() * m - Matrix::Identity(d, d)).cwiseAbs().maxCoeff() >
        kTolUnitary) {
      throw InvalidUnitaryError("representation matrix is not unitary");
    }
  }
  for (long a = 0; a < group_.order(); ++a) {
    for (long b = 0; b < group_.order(); ++b) {
      long c = group_.compose_index(a, b);
      if ((matrices_[a] * matrices_[b] - matrices_[c]).cwiseAbs().maxCoeff() >
          kTolUnitary) {
        throw GroupError("homomorphism violated: U(a)U(b) != U(ab)");
      }
    }
  }
  signs_.resize(group_.order());
  for (long i = 0; i < group_.order(); ++i) {
    signs_[i] = group_.element(i).sign();
  }
}

UnitaryRep standard_rep(int k, int d) {
  if (k < 1) throw GroupError("k must be >= 1");
  if (d < 2) throw LayoutError("d must be >= 2");
  FiniteGroup group = FiniteGroup::symmetric(k);
  std::vector<Register> regs;
  for (int i = 1; i <= k; ++i) {
    regs.push_back({"A" + std::to_string(i), d});
  }
  RegisterLayout layout(regs);  // capacity-checked here
  const long n = layout.total_dim();

  std::vector<Matrix> matrices;
  matrices.reserve(group.order());
  std::vector<long> digits(k), out_digits(k);
  for (long e = 0; e < group.order(); ++e) {
    const Permutation& sigma = group.element(e);
    Permutation sigma_inv = sigma.inverse();
    Matrix m = Matrix::Zero(n, n);
    for (long col = 0; col < n; ++col) {
      long rem = col;
      for (int i = k - 1; i >= 0; --i) {
        digits[i] = rem % d;
        rem /= d;
      }
      // U(sigma)|i_1,...,i_k> = |i_{sigma^{-1}(1)},...,i_{sigma^{-1}(k)}>
      for (int i = 0; i < k; ++i) {
        out_digits[i] = digits[sigma_inv.map0(i)];
      }
      long row = 0;
      for (int i = 0; i < k; ++i) row = row * d + out_digits[i];
      m(row, col) = 1.0;
    }
    matrices.push_back(std::move(m));
  }
  return UnitaryRep(std::move(group), std::move(layout), std::move(matrices));
}

UnitaryRep s3_two_qubit_rep() {
  FiniteGroup group = FiniteGroup::symmetric(3);
  RegisterLayout layout({{"B1", 2}, {"B2", 2}});
  Matrix hh = Eigen::kroneckerProduct(gates::hadamard(), gates::hadamard());
  Matrix cn = gates::cnot();
  Matrix sw = gates::swap_registers(2);

  std::map<std::string, Matrix> table;
  table["e"] = Matrix::Identity(4, 4);
  table["(1 2)"] = hh;
  table["(2 3)"] = hh * cn * sw;
  table["(1 3)"] = hh * sw * cn;
  table["(1 2 3)"] = cn * sw;
  table["(1 3 2)"] = sw * cn;

  std::vector<Matrix> matrices(group.order());
  for (long i = 0; i < group.order(); ++i) {
    matrices[i] = table.at(group.element(i).cycles());
  }
  return UnitaryRep(std::move(group), std::move(layout), std::move(matrices));
}

UnitaryRep signed_rep(const UnitaryRep& rep) {
  std::vector<Matrix> matrices;
  matrices.reserve(rep.group().order());
  for (long i = 0; i < rep.group().order(); ++i) {
    matrices.push_back(static_cast<double>(rep.sign_of(i)) * rep.matrix(i));
  }
  return UnitaryRep(rep.group(), rep.data_layout(), std::move(matrices));
}

ControlEncoding::ControlEncoding(FiniteGroup group,
                                 RegisterLayout control_layout,
                                 std::vector<long> element_to_basis,
                                 std::vector<std::vector<std::string>> blocks)
    : group_(std::move(group)),
      control_layout_(std::move(control_layout)),
      element_to_basis_(std::move(element_to_basis)),
      blocks_(std::move(blocks)) {
  basis_to_element_.assign(control_layout_.total_dim(), -1);
  std::set<long> used;
  for (long e = 0; e < group_.order(); ++e) {
    long b = element_to_basis_[e];
    if (b < 0 || b >= control_layout_.total_dim() || !used.insert(b).second) {
      throw GroupError("element-to-basis map is not injective");
    }
    basis_to_element_[b] = e;
  }
  if (element_to_basis_[group_.identity_index()] != 0) {
    throw GroupError("identity must map to the all-zeros basis state");
  }
  for (long e = 0; e < group_.order(); ++e) {
    long ones = 0;
    for (long d : control_layout_.digits(element_to_basis_[e])) {
      if (d != 0) ++ones;
    }
    int basis_parity = (ones % 2 == 0) ? 1 : -1;
    if (basis_parity != group_.element(e).sign()) {
      parity_valid_ = false;
      throw GroupError(
          "encoding violates the parity invariant required for |-_G>");
    }
  }
}

ControlEncoding ControlEncoding::barenco(int k) {
  if (k < 2 || k > 6) {
    throw CapacityError("Barenco encoding supported for 2 <= k <= 6");
  }
  FiniteGroup group = FiniteGroup::symmetric(k);
  std::vector<Register> regs;
  std::vector<std::vector<std::string>> blocks;
  for (int j = k; j >= 2; --j) {
    std::vector<std::string> block;
    for (int p = 0; p < j - 1; ++p) {
      std::string name = "c" + std::to_string(j) + "_" + std::to_string(p + 1);
      regs.push_back({name, 2});
      block.push_back(name);
    }
    blocks.push_back(std::move(block));
  }
  RegisterLayout layout(regs);

  // Factor sigma = tau_k o ... o tau_2, tau_j in {id} u {(i j) : i < j};
  // block j's qubit p one-hot encodes tau_j = (p+1, j).
  std::vector<long> element_to_basis(group.order());
  for (long e = 0; e < group.order(); ++e) {
    Permutation sigma = group.element(e);
    std::vector<long> digits(layout.size(), 0);
    long qubit_cursor = 0;  // blocks ordered j = k down to 2
    for (int j = k; j >= 2; --j) {
      int m = sigma.map0(j - 1) + 1;  // 1-based image of letter j
      if (m != j) {
        int i = m;  // tau_j = (i j)
        long pos_in_block = i - 1;
        digits[qubit_cursor + pos_in_block] = 1;
        sigma = Permutation::transposition(k, i, j) * sigma;
      }
      qubit_cursor += j - 1;
    }
    if (!sigma.is_identity()) {
      throw GroupError("Barenco factorization failed");  // unreachable
    }
    element_to_basis[e] = layout.index_of(digits);
  }
  return ControlEncoding(std::move(group), std::move(layout),
                         std::move(element_to_basis), std::move(blocks));
}

ControlEncoding ControlEncoding::for_group(const FiniteGroup& group) {
  ControlEncoding full = barenco(group.degree());
  std::vector<long> element_to_basis(group.order());
  for (long e = 0; e < group.order(); ++e) {
    element_to_basis[e] =
        full.basis_of(full.group().index_of(group.element(e)));
  }
  return ControlEncoding(group, full.control_layout(),
                         std::move(element_to_basis), full.blocks());
}

std::optional<long> ControlEncoding::element_of(long basis_index) const {
  if (basis_index < 0 ||
      basis_index >= static_cast<long>(basis_to_element_.size())) {
    return std::nullopt;
  }
  long e = basis_to_element_[basis_index];
  if (e < 0) return std::nullopt;
  return e;
}

ControlEncoding barenco_encoding(int k) { return ControlEncoding::barenco(k); }

ComplexTensorState plus_state(const ControlEncoding& enc) {
  Vector v = Vector::Zero(enc.control_layout().total_dim());
  const double amp = 1.0 / std::sqrt(static_cast<double>(enc.group().order()));
  for (long e = 0; e < enc.group().order(); ++e) {
    v(enc.basis_of(e)) = amp;
  }
  return ComplexTensorState(enc.control_layout(), std::move(v));
}

ComplexTensorState minus_state(const ControlEncoding& enc) {
  Vector v = Vector::Zero(enc.control_layout().total_dim());
  const double amp = 1.0 / std::sqrt(static_cast<double>(enc.group().order()));
  for (long e = 0; e < enc.group().order(); ++e) {
    v(enc.basis_of(e)) = amp * enc.group().element(e).sign();
  }
  return ComplexTensorState(enc.control_layout(), std::move(v));
}

double g_p(const FiniteGroup& group) {
  long total = 0;
  for (long e = 0; e < group.order(); ++e) {
    total += group.element(e).sign();
  }
  return static_cast<double>(total) / static_cast<double>(group.order());
}

double g_p(const UnitaryRep& rep) { return g_p(rep.group()); }

Operator a_j_unitary(int j) {
  if (j < 2) throw ParameterError("A_j requires j >= 2");
  const int qubits = j - 1;
  const long dim = 1L << qubits;
  Vector col = Vector::Zero(dim);
  const double amp = 1.0 / std::sqrt(static_cast<double>(j));
  col(0) = amp;
  for (int i = 1; i <= j - 1; ++i) {
    col(1L << (i - 1)) = amp;
  }
  std::vector<Register> regs;
  for (int p = 1; p <= qubits; ++p) {
    regs.push_back({"q" + std::to_string(p), 2});
  }
  return Operator(RegisterLayout(regs), gates::prepare_unitary(col));
}

}  // namespace projlab
