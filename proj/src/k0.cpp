#include "kcorr/k0.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <unordered_map>

#include "kcorr/error.hpp"
#include "kcorr/pairing.hpp"

namespace kcorr {

long matrix_rank(const QMatrix& m, const VarietyPtr& x) {
  if (!x->integral())
    fail(ErrorKind::NotIntegral, "rank over '" + x->name() + "' needs an integral coordinate ring (declare it integral)");
  QMatrix a = bound_to(m, x->coords());
  long r = 0;
  for (Eigen::Index c = 0; c < a.cols() && r < a.rows(); ++c) {
    Eigen::Index piv = -1;
    for (Eigen::Index i = r; i < a.rows(); ++i)
      if (!a(i, c).is_zero()) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    a.row(piv).swap(a.row(r));
    const QElem pv = a(r, c);
    // Fraction-free elimination: the ring is a domain, so scaling by pv keeps rank.
    for (Eigen::Index i = r + 1; i < a.rows(); ++i) {
      if (a(i, c).is_zero()) continue;
      const QElem f = a(i, c);
      for (Eigen::Index j = c; j < a.cols(); ++j) a(i, j) = pv * a(i, j) - f * a(r, j);
    }
    ++r;
  }
  return r;
}

long rank(const CorrObject& phi) { return phi.n() == 0 ? 0 : matrix_rank(phi.p(), phi.X()); }

std::string K0Class::to_string() const {
  if (coeffs.empty()) return "0";
  std::string s;
  for (const auto& [id, c] : coeffs) {
    const std::string term = "[#" + std::to_string(id) + "]";
    const std::int64_t a = c < 0 ? -c : c;
    if (s.empty())
      s = c < 0 ? "-" : "";
    else
      s += c < 0 ? " - " : " + ";
    s += (a == 1 ? "" : std::to_string(a)) + term;
  }
  return s;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::CertifiedEqual: return "certified-equal";
    case Verdict::DistinctByRank: return "distinct-by-rank";
    case Verdict::Undetermined: return "undetermined";
  }
  return "undetermined";
}

K0Ledger::K0Ledger(VarietyPtr x, VarietyPtr y) : x_(std::move(x)), y_(std::move(y)) {}

void K0Ledger::check(ObjectId id) const {
  if (id >= objects_.size()) fail(ErrorKind::UnknownObject, "object #" + std::to_string(id) + " is not registered");
}

const CorrObject& K0Ledger::object(ObjectId id) const {
  check(id);
  return objects_[id];
}

std::optional<ObjectId> K0Ledger::find(const CorrObject& obj) const {
  for (ObjectId i = 0; i < objects_.size(); ++i)
    if (objects_[i] == obj) return i;
  return std::nullopt;
}

namespace {

CorrObject sub_object(const CorrObject& obj, Eigen::Index start, Eigen::Index len) {
  std::vector<QMatrix> gens;
  for (const auto& a : obj.gens()) gens.push_back(a.block(start, start, len, len));
  return CorrObject(obj.X(), obj.Y(), obj.p().block(start, start, len, len), std::move(gens));
}

bool splits_at(const CorrObject& obj, Eigen::Index k) {
  const Eigen::Index n = obj.n();
  auto off_zero = [&](const QMatrix& m) {
    return is_zero(m.block(0, k, k, n - k)) && is_zero(m.block(k, 0, n - k, k));
  };
  if (!off_zero(obj.p())) return false;
  for (const auto& a : obj.gens())
    if (!off_zero(a)) return false;
  return true;
}

}  // namespace

ObjectId K0Ledger::add(const CorrObject& obj) {
  require_same(obj.X(), x_, "registering in a K0 ledger");
  require_same(obj.Y(), y_, "registering in a K0 ledger");
  if (auto hit = find(obj)) return *hit;
  const ObjectId id = objects_.size();
  objects_.push_back(obj);
  parent_.push_back(id);
  ranks_.push_back(x_->integral() ? std::optional<long>(rank(obj)) : std::nullopt);
  if (obj.n() == 0 || is_zero(obj.p())) {
    relate({{id, 1}});
    return id;
  }
  for (Eigen::Index k = 1; k < obj.n(); ++k) {
    if (!splits_at(obj, k)) continue;
    const ObjectId a = add(sub_object(obj, 0, k));
    const ObjectId b = add(sub_object(obj, k, obj.n() - k));
    std::map<ObjectId, std::int64_t> rel{{id, 1}};
    rel[a] -= 1;
    rel[b] -= 1;
    relate(std::move(rel));
    break;
  }
  return id;
}

ObjectId K0Ledger::add_sum(ObjectId a, ObjectId b) {
  check(a);
  check(b);
  const ObjectId s = add(direct_sum(objects_[a], objects_[b]));
  std::map<ObjectId, std::int64_t> rel{{s, 1}};
  rel[a] -= 1;
  rel[b] -= 1;
  relate(std::move(rel));
  return s;
}

void K0Ledger::relate(std::map<ObjectId, std::int64_t> relation) {
  std::erase_if(relation, [](const auto& kv) { return kv.second == 0; });
  if (!relation.empty()) relations_.push_back(std::move(relation));
}

void K0Ledger::register_iso(const IsoCertificate& cert) {
  if (!verify_iso(cert)) fail(ErrorKind::InvalidCertificate, "certificate does not compose to identities");
  const ObjectId a = add(cert.fwd.src()), b = add(cert.fwd.dst());
  const ObjectId ra = find_root(a), rb = find_root(b);
  if (ra != rb) parent_[std::max(ra, rb)] = std::min(ra, rb);
  ++certificates_;
}

ObjectId K0Ledger::find_root(ObjectId id) const {
  while (parent_[id] != id) {
    parent_[id] = parent_[parent_[id]];
    id = parent_[id];
  }
  return id;
}

ObjectId K0Ledger::representative(ObjectId id) const {
  check(id);
  return find_root(id);
}

namespace {

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

}  // namespace

K0Class K0Ledger::class_of(const FormalSum& sum) const {
  for (const auto& [id, c] : sum) check(id);
  // Columns: representatives, highest id first, so later (composite) objects
  // are eliminated in favour of earlier ones.
  std::set<ObjectId, std::greater<>> roots;
  for (ObjectId i = 0; i < objects_.size(); ++i) roots.insert(find_root(i));
  std::vector<ObjectId> cols(roots.begin(), roots.end());
  std::unordered_map<ObjectId, std::size_t> col_of;
  for (std::size_t k = 0; k < cols.size(); ++k) col_of[cols[k]] = k;

  auto dense = [&](const std::map<ObjectId, std::int64_t>& m) {
    std::vector<std::int64_t> v(cols.size(), 0);
    for (const auto& [id, c] : m) v[col_of.at(find_root(id))] += c;
    return v;
  };
  std::vector<std::vector<std::int64_t>> rows;
  for (const auto& r : relations_) rows.push_back(dense(r));

  // Hermite normal form by repeated Euclidean elimination.
  std::vector<std::pair<std::size_t, std::size_t>> pivots;  // (column, row)
  std::size_t top = 0;
  for (std::size_t c = 0; c < cols.size() && top < rows.size(); ++c) {
    for (;;) {
      std::size_t best = rows.size();
      for (std::size_t i = top; i < rows.size(); ++i)
        if (rows[i][c] != 0 && (best == rows.size() || std::llabs(rows[i][c]) < std::llabs(rows[best][c]))) best = i;
      if (best == rows.size()) break;
      std::swap(rows[top], rows[best]);
      bool done = true;
      for (std::size_t i = top + 1; i < rows.size(); ++i) {
        if (rows[i][c] == 0) continue;
        const std::int64_t q = rows[i][c] / rows[top][c];
        for (std::size_t j = 0; j < cols.size(); ++j) rows[i][j] -= q * rows[top][j];
        if (rows[i][c] != 0) done = false;
      }
      if (done) break;
    }
    if (top == rows.size() || rows[top][c] == 0) continue;
    if (rows[top][c] < 0)
      for (auto& x : rows[top]) x = -x;
    for (std::size_t i = 0; i < top; ++i) {
      const std::int64_t q = floor_div(rows[i][c], rows[top][c]);
      if (q)
        for (std::size_t j = 0; j < cols.size(); ++j) rows[i][j] -= q * rows[top][j];
    }
    pivots.emplace_back(c, top);
    ++top;
  }

  std::vector<std::int64_t> v = dense(sum);
  for (const auto& [c, r] : pivots) {
    const std::int64_t q = floor_div(v[c], rows[r][c]);
    if (q)
      for (std::size_t j = 0; j < cols.size(); ++j) v[j] -= q * rows[r][j];
  }
  K0Class out;
  for (std::size_t k = 0; k < cols.size(); ++k)
    if (v[k] != 0) out.coeffs[cols[k]] = v[k];
  return out;
}

K0Class K0Ledger::class_of(const CorrObject& obj) const {
  auto id = find(obj);
  if (!id) fail(ErrorKind::UnknownObject, "object is not registered in the ledger");
  return class_of(FormalSum{{*id, 1}});
}

std::vector<std::vector<ObjectId>> K0Ledger::partition() const {
  std::map<ObjectId, std::vector<ObjectId>> blocks;
  for (ObjectId i = 0; i < objects_.size(); ++i) blocks[find_root(i)].push_back(i);
  std::vector<std::vector<ObjectId>> out;
  for (auto& [root, ids] : blocks) out.push_back(std::move(ids));
  return out;
}

std::optional<std::int64_t> K0Ledger::rank_of(const FormalSum& sum) const {
  std::int64_t r = 0;
  for (const auto& [id, c] : sum) {
    check(id);
    if (!ranks_[id]) return std::nullopt;
    r += c * *ranks_[id];
  }
  return r;
}

Verdict K0Ledger::compare(const FormalSum& a, const FormalSum& b) const {
  FormalSum diff = a;
  for (const auto& [id, c] : b) diff[id] -= c;
  if (class_of(diff).is_zero()) return Verdict::CertifiedEqual;
  const auto ra = rank_of(a), rb = rank_of(b);
  if (ra && rb && *ra != *rb) return Verdict::DistinctByRank;
  return Verdict::Undetermined;
}

K0Ledger& k0_register(K0Ledger& ledger, const IsoCertificate& cert) {
  ledger.register_iso(cert);
  return ledger;
}

K0Class k0_class(const K0Ledger& ledger, const FormalSum& sum) { return ledger.class_of(sum); }

K0Class k0_compose(const K0Ledger& vu, const K0Ledger& ux, const FormalSum& a, const FormalSum& b, K0Ledger& target) {
  require_same(vu.Y(), ux.X(), "composing K0 classes");
  require_same(vu.X(), target.X(), "composing K0 classes");
  require_same(ux.Y(), target.Y(), "composing K0 classes");
  FormalSum out;
  for (const auto& [i, c] : a)
    for (const auto& [j, d] : b) out[target.add(compose_objects(vu.object(i), ux.object(j)))] += c * d;
  return target.class_of(out);
}

IsoCertificate transport_certificate(const IsoCertificate& c1, const IsoCertificate& c2) {
  return {compose_morphisms(c2.fwd, c1.fwd), compose_morphisms(c2.bwd, c1.bwd)};
}

IsoCertificate chain(const IsoCertificate& c1, const IsoCertificate& c2) {
  return {compose_vertical(c2.fwd, c1.fwd), compose_vertical(c1.bwd, c2.bwd)};
}

namespace {

using Dense = std::vector<std::vector<Coeff>>;

Dense constants(const QMatrix& m, FieldTag k) {
  Dense d(static_cast<std::size_t>(m.rows()), std::vector<Coeff>(static_cast<std::size_t>(m.cols()), Coeff::zero(k)));
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) d[i][j] = m(i, j).rep().constant_term().in(k);
  return d;
}

QMatrix to_q(const Dense& d, std::size_t rows, std::size_t cols, const VarietyPtr& x) {
  QMatrix m = zeros(x->coords(), static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = x->constant(d[i][j]);
  return m;
}

// Columns of p spanning its image, and C with B*C = p.
std::pair<Dense, Dense> image_basis(const Dense& p, FieldTag k) {
  const std::size_t n = p.size();
  // Row-reduce a copy to find pivot columns.
  Dense a = p;
  std::vector<std::size_t> pivcols;
  std::size_t r = 0;
  for (std::size_t c = 0; c < n && r < n; ++c) {
    std::size_t piv = n;
    for (std::size_t i = r; i < n; ++i)
      if (!a[i][c].is_zero()) {
        piv = i;
        break;
      }
    if (piv == n) continue;
    std::swap(a[r], a[piv]);
    const Coeff inv = a[r][c].inverse();
    for (auto& x : a[r]) x *= inv;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == r || a[i][c].is_zero()) continue;
      const Coeff f = a[i][c];
      for (std::size_t j = 0; j < n; ++j) a[i][j] -= f * a[r][j];
    }
    pivcols.push_back(c);
    ++r;
  }
  // B = p[:, pivcols]; the reduced rows of a give C directly since p = B * rref(p)[0:r].
  Dense B(n, std::vector<Coeff>(r, Coeff::zero(k)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < r; ++j) B[i][j] = p[i][pivcols[j]];
  Dense C(a.begin(), a.begin() + static_cast<std::ptrdiff_t>(r));
  return {B, C};
}

Dense dmul(const Dense& a, const Dense& b, std::size_t inner, std::size_t cols, FieldTag k) {
  Dense out(a.size(), std::vector<Coeff>(cols, Coeff::zero(k)));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t t = 0; t < inner; ++t)
      if (!a[i][t].is_zero())
        for (std::size_t j = 0; j < cols; ++j) out[i][j] += a[i][t] * b[t][j];
  return out;
}

std::optional<IsoCertificate> match_images(const CorrObject& a, const CorrObject& b) {
  const FieldTag k = a.X()->field();
  const auto [Ba, Ca] = image_basis(constants(a.p(), k), k);
  const auto [Bb, Cb] = image_basis(constants(b.p(), k), k);
  const std::size_t r = Ca.size();
  if (r != Cb.size()) return std::nullopt;
  const auto na = static_cast<std::size_t>(a.n()), nb = static_cast<std::size_t>(b.n());
  const Dense fwd = dmul(Bb, Ca, r, na, k), bwd = dmul(Ba, Cb, r, nb, k);
  IsoCertificate cert{CorrMorphism(a, b, to_q(fwd, nb, na, a.X())), CorrMorphism(b, a, to_q(bwd, na, nb, a.X()))};
  if (!verify_iso(cert)) return std::nullopt;
  return cert;
}

CorrObject padded(const CorrObject& a, Eigen::Index n) {
  const QElem z = QElem::normal(a.X()->coords(), Poly(a.X()->ring()));
  QMatrix p = QMatrix::Constant(n, n, z);
  p.topLeftCorner(a.n(), a.n()) = a.p();
  return CorrObject(a.X(), a.Y(), p, {});
}

IsoCertificate pad_certificate(const CorrObject& a, const CorrObject& big) {
  const QElem z = QElem::normal(a.X()->coords(), Poly(a.X()->ring()));
  QMatrix f = QMatrix::Constant(big.n(), a.n(), z), g = QMatrix::Constant(a.n(), big.n(), z);
  f.topRows(a.n()) = a.p();
  g.leftCols(a.n()) = a.p();
  return {CorrMorphism(a, big, f), CorrMorphism(big, a, g)};
}

IsoCertificate reversed(const IsoCertificate& c) { return {c.bwd, c.fwd}; }

using Residues = std::vector<std::uint32_t>;

Residues rmul(const Residues& a, const Residues& b, std::size_t n, std::uint32_t p) {
  Residues out(n * n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t t = 0; t < n; ++t)
      if (a[i * n + t])
        for (std::size_t j = 0; j < n; ++j) out[i * n + j] = static_cast<std::uint32_t>((out[i * n + j] + std::uint64_t{a[i * n + t]} * b[t * n + j]) % p);
  return out;
}

std::optional<IsoCertificate> conjugation_search(const CorrObject& a, const CorrObject& b) {
  const FieldTag k = a.X()->field();
  const std::uint32_t p = k.characteristic();
  const Eigen::Index N = std::max(a.n(), b.n());
  const CorrObject pa = padded(a, N), pb = padded(b, N);
  const auto n = static_cast<std::size_t>(N);
  auto residues = [&](const QMatrix& m) {
    Residues r(n * n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) r[i * n + j] = m(i, j).rep().constant_term().in(k).residue();
    return r;
  };
  const Residues start = residues(pa.p()), goal = residues(pb.p());
  Residues ident(n * n, 0);
  for (std::size_t i = 0; i < n; ++i) ident[i * n + i] = 1;

  struct Node {
    Residues u, uinv;
    int depth;
  };
  std::map<Residues, Node> seen{{start, {ident, ident, 0}}};
  std::deque<Residues> queue{start};
  std::optional<Node> found;
  if (start == goal) found = seen.at(start);
  while (!found && !queue.empty()) {
    const Residues cur = queue.front();
    queue.pop_front();
    const Node node = seen.at(cur);
    if (node.depth == 4) continue;
    for (std::size_t i = 0; i < n && !found; ++i)
      for (std::size_t j = 0; j < n && !found; ++j) {
        if (i == j) continue;
        for (std::uint32_t c = 1; c < p && !found; ++c) {
          Residues t = ident, tinv = ident;
          t[i * n + j] = c;
          tinv[i * n + j] = p - c;
          Residues next = rmul(rmul(t, cur, n, p), tinv, n, p);
          if (seen.count(next)) continue;
          Node nn{rmul(t, node.u, n, p), rmul(node.uinv, tinv, n, p), node.depth + 1};
          seen.emplace(next, nn);
          if (next == goal)
            found = nn;
          else
            queue.push_back(next);
        }
      }
  }
  if (!found) return std::nullopt;
  auto to_matrix = [&](const Residues& r) {
    QMatrix m(N, N);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m(i, j) = a.X()->constant(Coeff::from_integer(k, r[i * n + j]));
    return m;
  };
  const QMatrix u = to_matrix(found->u), uinv = to_matrix(found->uinv);
  const IsoCertificate conj{CorrMorphism(pa, pb, mul(u, pa.p())), CorrMorphism(pb, pa, mul(pa.p(), uinv, pb.p()))};
  IsoCertificate cert = chain(chain(pad_certificate(a, pa), conj), reversed(pad_certificate(b, pb)));
  if (!verify_iso(cert)) return std::nullopt;
  return cert;
}

}  // namespace

std::optional<IsoCertificate> find_pt_isomorphism(const CorrObject& a, const CorrObject& b) {
  require_same(a.X(), b.X(), "isomorphism search");
  require_same(a.Y(), b.Y(), "isomorphism search");
  if (a.X()->nvars() != 0 || a.Y()->nvars() != 0)
    fail(ErrorKind::ShapeError, "isomorphism search is only available over (pt, pt)");
  if (a.n() > 3 || b.n() > 3) fail(ErrorKind::ShapeError, "isomorphism search is limited to n <= 3");
  if (rank(a) != rank(b)) return std::nullopt;
  if (a.X()->field().is_rational()) return match_images(a, b);
  return conjugation_search(a, b);
}

}  // namespace kcorr
