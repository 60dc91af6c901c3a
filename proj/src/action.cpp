#include "qcpat/action.hpp"

#include "qcpat/scalar_io.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <iomanip>
#include <set>
#include <sstream>
#include <stdexcept>

namespace qcpat {

// ---------------------------------------------------------------------------
// LinComb
// ---------------------------------------------------------------------------

LinComb LinComb::unit(const CPattern& p) {
  LinComb x;
  x.terms.emplace(p, RadicalScalar::one());
  return x;
}

void LinComb::add(const CPattern& p, const RadicalScalar& c) {
  if (c.is_zero()) return;
  auto [it, fresh] = terms.try_emplace(p, c);
  if (!fresh) {
    it->second += c;
    if (it->second.is_zero()) terms.erase(it);
  }
}

LinComb& LinComb::operator+=(const LinComb& o) {
  for (const auto& [p, c] : o.terms) add(p, c);
  return *this;
}

LinComb& LinComb::operator-=(const LinComb& o) {
  for (const auto& [p, c] : o.terms) add(p, -c);
  return *this;
}

LinComb LinComb::scaled(const RadicalScalar& c) const {
  LinComb out;
  if (c.is_zero()) return out;
  for (const auto& [p, s] : terms) out.add(p, s * c);
  return out;
}

LinComb LinComb::scaled(const Frac& c) const {
  LinComb out;
  if (c.is_zero()) return out;
  for (const auto& [p, s] : terms) out.add(p, s.scaled(c));
  return out;
}

bool LinComb::equals(const LinComb& o) const {
  LinComb d = *this;
  d -= o;
  return d.is_zero();
}

// ---------------------------------------------------------------------------
// The raising/lowering engine
// ---------------------------------------------------------------------------

namespace {

// Integer representative of L_{i,r} = M_{i,r} - i up to the shared base mu
// (only differences of L-values ever enter a bracket, so mu drops out).
long l_rel(const Signature& sig, const CPattern& p, int i, int r) {
  return entry(sig, p, i, r) - i;
}

// One generator family of the double-sum formulas.  Terms are indexed by a
// pair (j, l) with j in row rowJ and l in row rowL = rowJ + 1; the four
// shifts are the additive constants inside the bracket arguments:
//
//   numerator 1: [L(i, rowL) - L(j, rowJ) + n1]   over row rowL without l,
//                and the same shift over the full row rowJ - 1;
//   denominator 1: [L(i, rowJ) - L(j, rowJ)] [... + d1]  over rowJ without j;
//   numerator 2: [L(i, rowL+1) - L(l, rowL) + n2] over the full row rowL + 1,
//                and the same shift over row rowJ without j;
//   denominator 2: [L(i, rowL) - L(l, rowL)] [... + d2]  over rowL without l.
//
// The term carries sign -S(j, l; nu) and shifts entries (j, rowJ) and
// (l, rowL) both by delta.
struct FamilySpec {
  int rowJ;
  int rowL;
  long n1, d1, n2, d2;
  int nu;
  int delta;
};

FamilySpec family_spec(bool raising, int k) {
  if (k >= 0) {
    if (raising) return {2 * k + 1, 2 * k + 2, -1, -1, 0, -1, 0, +1};
    return {2 * k + 1, 2 * k + 2, 0, +1, +1, +1, 0, -1};
  }
  const int K = -k;  // K >= 2 here (k = -1 is the rank-one special case)
  if (raising) return {2 * K - 2, 2 * K - 1, +1, +1, 0, +1, 1, -1};
  return {2 * K - 2, 2 * K - 1, 0, -1, -1, -1, 1, +1};
}

// Shifts entries (j, rowJ) and (l, rowL) by delta; empty when the result
// leaves the pattern family.
std::optional<CPattern> double_shift(const Signature& sig, const CPattern& p, int j,
                                     int rowJ, int l, int rowL, int delta) {
  CPattern q = materialize(sig, p, rowL);
  q.rows[static_cast<std::size_t>(rowJ - 1)]
        [static_cast<std::size_t>(j - row_left_index(rowJ))] += delta;
  q.rows[static_cast<std::size_t>(rowL - 1)]
        [static_cast<std::size_t>(l - row_left_index(rowL))] += delta;
  if (!interlacing_violations(sig, q).empty()) return std::nullopt;
  return normalize(sig, std::move(q));
}

// Index -1: a single bracket pair on entry (0, 1).  The resolved orientation
// lowers the entry under the raising generator (and raises it under the
// lowering generator); the flipped convention swaps the two directions while
// the coefficients stay with their generator.
LinComb apply_rank1(const Signature& sig, bool raising, const CPattern& p,
                    const ApplyOptions& opts) {
  const long a1 = l_rel(sig, p, -1, 2) - l_rel(sig, p, 0, 1);
  const long a2 = l_rel(sig, p, 0, 1) - l_rel(sig, p, 0, 2);
  const std::vector<long> num = raising ? std::vector<long>{a1, a2}
                                        : std::vector<long>{a1 - 1, a2 + 1};
  int delta = raising ? -1 : +1;
  if (opts.orientation == Orientation::Flipped) delta = -delta;
  LinComb out;
  if (num[0] == 0 || num[1] == 0) return out;  // zero multiple: term absent
  const std::optional<CPattern> tgt = shift(sig, p, 0, 1, delta);
  if (!tgt) {
    if (opts.deletionSink)
      opts.deletionSink->push_back({p, raising ? "e-1" : "f-1", 0, 0,
                                    "target violates betweenness with nonzero coefficient"});
    return out;
  }
  const RadicalScalar coeff = rad_from_brackets(+1, num, {});
  if (opts.traceSink) opts.traceSink->push_back({p, *tgt, {+1, num, {}}, coeff});
  out.add(*tgt, coeff);
  return out;
}

LinComb apply_engine(const Signature& sig, bool raising, int k, const CPattern& p,
                     const ApplyOptions& opts) {
  if (k == -1) return apply_rank1(sig, raising, p, opts);
  const FamilySpec F = family_spec(raising, k);
  const std::string name = (raising ? "e" : "f") + std::to_string(k);
  LinComb out;
  for (int j = row_left_index(F.rowJ); j <= row_right_index(F.rowJ); ++j) {
    const long Lj = l_rel(sig, p, j, F.rowJ);
    for (int l = row_left_index(F.rowL); l <= row_right_index(F.rowL); ++l) {
      const long Ll = l_rel(sig, p, l, F.rowL);
      std::vector<long> num;
      std::vector<long> den;
      bool numZero = false;
      const auto pushNum = [&](long arg) {
        num.push_back(arg);
        if (arg == 0) numZero = true;
      };
      for (int i = row_left_index(F.rowL); i <= row_right_index(F.rowL); ++i)
        if (i != l) pushNum(l_rel(sig, p, i, F.rowL) - Lj + F.n1);
      for (int i = row_left_index(F.rowJ - 1); i <= row_right_index(F.rowJ - 1); ++i)
        pushNum(l_rel(sig, p, i, F.rowJ - 1) - Lj + F.n1);
      for (int i = row_left_index(F.rowL + 1); i <= row_right_index(F.rowL + 1); ++i)
        pushNum(l_rel(sig, p, i, F.rowL + 1) - Ll + F.n2);
      for (int i = row_left_index(F.rowJ); i <= row_right_index(F.rowJ); ++i)
        if (i != j) pushNum(l_rel(sig, p, i, F.rowJ) - Ll + F.n2);
      if (numZero) continue;  // zero multiple: term absent before any other test
      for (int i = row_left_index(F.rowJ); i <= row_right_index(F.rowJ); ++i) {
        if (i == j) continue;
        const long d = l_rel(sig, p, i, F.rowJ) - Lj;
        den.push_back(d);
        den.push_back(d + F.d1);
      }
      for (int i = row_left_index(F.rowL); i <= row_right_index(F.rowL); ++i) {
        if (i == l) continue;
        const long d = l_rel(sig, p, i, F.rowL) - Ll;
        den.push_back(d);
        den.push_back(d + F.d2);
      }
      const int S = (j == l) ? (F.nu == 1 ? -1 : +1) : (j < l ? +1 : -1);
      const int sign = -S;
      const std::optional<CPattern> tgt =
          double_shift(sig, p, j, F.rowJ, l, F.rowL, F.delta);
      if (!tgt) {
        const bool denZero = std::find(den.begin(), den.end(), 0L) != den.end();
        if (!denZero && opts.deletionSink)
          opts.deletionSink->push_back(
              {p, name, j, l, "target violates betweenness with nonzero coefficient"});
        continue;  // deletion convention
      }
      // A vanishing denominator bracket under a valid target would be a
      // convention bug; rad_from_brackets throws on it.
      const RadicalScalar coeff = rad_from_brackets(sign, num, den);
      if (opts.traceSink) opts.traceSink->push_back({p, *tgt, {sign, num, den}, coeff});
      out.add(*tgt, coeff);
    }
  }
  return out;
}

}  // namespace

LinComb apply_e(const Signature& sig, int k, const CPattern& p, const ApplyOptions& opts) {
  return apply_engine(sig, true, k, p, opts);
}

LinComb apply_f(const Signature& sig, int k, const CPattern& p, const ApplyOptions& opts) {
  return apply_engine(sig, false, k, p, opts);
}

LinComb apply_f_closedform(const Signature& sig, int k, const CPattern& p) {
  const int need = depth_requirement(sig, p);
  if (2 * k < need)
    throw std::invalid_argument("closed form requires 2k >= " + std::to_string(need) +
                                ", got k = " + std::to_string(k));
  LinComb out;
  const long arg = sig.offset_at(k + 1) - sig.offset_at(k);  // M_{k+1} - M_k
  if (arg == 0) return out;
  const std::optional<CPattern> tgt =
      double_shift(sig, p, k, 2 * k + 1, k, 2 * k + 2, -1);
  if (!tgt) throw std::logic_error("closed-form target unexpectedly invalid");
  out.add(*tgt, rad_from_brackets(-1, {arg}, {}));
  return out;
}

// ---------------------------------------------------------------------------
// Operator words
// ---------------------------------------------------------------------------

std::string gen_name(const GenSymbol& g) {
  switch (g.kind) {
    case GenSymbol::Kind::E: return "e" + std::to_string(g.index);
    case GenSymbol::Kind::F: return "f" + std::to_string(g.index);
    case GenSymbol::Kind::H: return "h" + std::to_string(g.index);
    case GenSymbol::Kind::C: return "c";
    case GenSymbol::Kind::Diag: break;
  }
  throw std::invalid_argument("diagonal symbols have no generator name");
}

GenSymbol gen_parse(const std::string& name) {
  if (name == "c") return GenSymbol::c();
  if (name.size() >= 2 && (name[0] == 'e' || name[0] == 'f' || name[0] == 'h')) {
    const std::string body = name.substr(1);
    const std::size_t start = body[0] == '-' ? 1 : 0;
    bool digits = start < body.size();
    for (std::size_t i = start; i < body.size(); ++i)
      digits = digits && body[i] >= '0' && body[i] <= '9';
    if (digits) {
      const int idx = std::stoi(body);
      if (name[0] == 'e') return GenSymbol::e(idx);
      if (name[0] == 'f') return GenSymbol::f(idx);
      return GenSymbol::h(idx);
    }
  }
  throw std::invalid_argument("unrecognized generator name: " + name);
}

OperatorWord word_identity() { return {WordTerm{}}; }

OperatorWord word_of(std::vector<GenSymbol> symbols) {
  WordTerm t;
  t.symbols = std::move(symbols);
  return {std::move(t)};
}

OperatorWord word_scaled(const OperatorWord& w, const RadicalScalar& c) {
  OperatorWord out;
  if (c.is_zero()) return out;
  out.reserve(w.size());
  for (const WordTerm& t : w) {
    WordTerm s = t;
    s.coeff = t.coeff * c;
    if (!s.coeff.is_zero()) out.push_back(std::move(s));
  }
  return out;
}

OperatorWord word_mul(const OperatorWord& a, const OperatorWord& b) {
  OperatorWord out;
  out.reserve(a.size() * b.size());
  for (const WordTerm& x : a)
    for (const WordTerm& y : b) {
      WordTerm t;
      t.coeff = x.coeff * y.coeff;
      if (t.coeff.is_zero()) continue;
      t.symbols = x.symbols;
      t.symbols.insert(t.symbols.end(), y.symbols.begin(), y.symbols.end());
      out.push_back(std::move(t));
    }
  return out;
}

OperatorWord word_add(const OperatorWord& a, const OperatorWord& b) {
  OperatorWord out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

OperatorWord word_sub(const OperatorWord& a, const OperatorWord& b) {
  return word_add(a, word_scaled(b, RadicalScalar::from_rational(Rational(-1))));
}

OperatorWord q_commutator(const OperatorWord& x, const OperatorWord& y) {
  const RadicalScalar q =
      RadicalScalar::from_frac(Frac::from_poly(LaurentPoly::monomial(Rational(1), 2)));
  return word_sub(word_mul(x, y), word_scaled(word_mul(y, x), q));
}

OperatorWord commutator(const OperatorWord& x, const OperatorWord& y) {
  return word_sub(word_mul(x, y), word_mul(y, x));
}

LinComb apply_symbol(const Signature& sig, const GenSymbol& g, const LinComb& x,
                     const ApplyOptions& opts) {
  LinComb out;
  switch (g.kind) {
    case GenSymbol::Kind::E:
      for (const auto& [p, c] : x.terms) out += apply_e(sig, g.index, p, opts).scaled(c);
      return out;
    case GenSymbol::Kind::F:
      for (const auto& [p, c] : x.terms) out += apply_f(sig, g.index, p, opts).scaled(c);
      return out;
    case GenSymbol::Kind::H:
      for (const auto& [p, c] : x.terms) {
        const WeightValue w = weight(sig, p, g.index);
        if (!w.is_constant())
          throw std::domain_error("h" + std::to_string(g.index) +
                                  " eigenvalue is not constant: " + w.to_string());
        out.add(p, c.scaled(Frac::from_rational(w.cst)));
      }
      return out;
    case GenSymbol::Kind::C: {
      const WeightValue w = c_eigenvalue(sig);
      if (!w.is_constant())
        throw std::domain_error("central eigenvalue is not constant: " + w.to_string());
      for (const auto& [p, c] : x.terms)
        out.add(p, c.scaled(Frac::from_rational(w.cst)));
      return out;
    }
    case GenSymbol::Kind::Diag:
      for (const auto& [p, c] : x.terms) {
        WeightValue w;
        for (const auto& [idx, coef] : g.diag) w += Rational(coef) * weight(sig, p, idx);
        const std::optional<long> e = w.integer_value();
        if (!e)
          throw std::domain_error("diagonal v-exponent is not an integer: " + w.to_string());
        out.add(p, c.scaled(Frac::from_poly(
                       LaurentPoly::monomial(Rational(1), static_cast<int>(*e)))));
      }
      return out;
  }
  throw std::logic_error("unhandled generator kind");
}

LinComb apply_word(const Signature& sig, const OperatorWord& w, const LinComb& x,
                   const ApplyOptions& opts) {
  LinComb out;
  for (const WordTerm& t : w) {
    LinComb cur = x;
    for (auto it = t.symbols.rbegin(); it != t.symbols.rend() && !cur.is_zero(); ++it)
      cur = apply_symbol(sig, *it, cur, opts);
    out += cur.scaled(t.coeff);
  }
  return out;
}

OperatorWord hat_generator(char kind, int i) {
  if (kind == 'e')
    return word_of({GenSymbol::e(i), GenSymbol::diag_v({{i + 1, +1}, {i, -1}})});
  if (kind == 'f')
    return word_of({GenSymbol::f(i), GenSymbol::diag_v({{i, +1}, {i + 1, -1}})});
  throw std::invalid_argument("hat_generator kind must be 'e' or 'f'");
}

OperatorWord weyl_generator(int a, int b) {
  if (a == b) return word_of({GenSymbol::h(a)});
  if (a < b) {
    if (a + 1 == b) return hat_generator('e', a);
    return q_commutator(hat_generator('e', a), weyl_generator(a + 1, b));
  }
  if (b + 1 == a) return hat_generator('f', b);
  return q_commutator(hat_generator('f', b), weyl_generator(a, b + 1));
}

// ---------------------------------------------------------------------------
// Diagnostics
// ---------------------------------------------------------------------------

WeightValue gl_H(const Signature& sig, const CPattern& p, int i) {
  return weight(sig, p, i) + (i <= 0 ? sig.xi0_wv() : sig.xi1_wv());
}

int locality_radius(const Signature& sig, int N) {
  if (N < 1) throw std::invalid_argument("locality_radius requires N >= 1");
  long r = (static_cast<long>(N) + 4) / 2;
  r = std::max(r, 1L - sig.m);
  r = std::max(r, static_cast<long>(sig.n));
  return static_cast<int>(r);
}

SeriesPartial series_I_partial(const Signature& sig, const CPattern& p, int T) {
  if (T < 0) throw std::invalid_argument("series partial sum requires T >= 0");
  SeriesPartial out;
  for (int i = -T; i <= T; ++i) out.value += weight(sig, p, i);
  // Beyond B = max(depth, |m|, |n|) the weight is constant on each side, so
  // vanishing at +-T and +-(T+1) certifies that every further term is zero.
  int B = std::max(normalize(sig, p).depth(), 1);
  B = std::max(B, std::abs(sig.m));
  B = std::max(B, std::abs(sig.n));
  out.stabilized = T >= B && weight(sig, p, T).is_zero() &&
                   weight(sig, p, -T).is_zero() && weight(sig, p, T + 1).is_zero() &&
                   weight(sig, p, -T - 1).is_zero();
  return out;
}

std::vector<std::pair<int, int>> support_components(const SeriesSupport& s) {
  std::set<int> idx;
  for (const auto& [i, mult] : s.alpha)
    if (mult > 0) idx.insert(i);
  for (const auto& [i, mult] : s.gamma)
    if (mult > 0) idx.insert(i);
  std::vector<std::pair<int, int>> out;
  for (int i : idx) {
    if (!out.empty() && out.back().second + 1 == i)
      out.back().second = i;
    else
      out.emplace_back(i, i);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Matrix export
// ---------------------------------------------------------------------------

int window_growth(int N, const GenSymbol& g) {
  if (g.kind == GenSymbol::Kind::E || g.kind == GenSymbol::Kind::F)
    return std::max(N, 2 * std::abs(g.index) + 3);
  return N;
}

bool GenMatrix::equals(const GenMatrix& o) const {
  if (gen != o.gen || sigDigest != o.sigDigest || N != o.N || Np != o.Np) return false;
  if (entries.size() != o.entries.size()) return false;
  auto jt = o.entries.begin();
  for (auto it = entries.begin(); it != entries.end(); ++it, ++jt)
    if (it->first != jt->first || !it->second.equals(jt->second)) return false;
  return true;
}

GenMatrix build_matrix(const Signature& sig, const GenSymbol& g, int N, Exec exec,
                       const ApplyOptions& opts) {
  if (g.kind == GenSymbol::Kind::Diag)
    throw std::invalid_argument("matrix export handles named generators only");
  GenMatrix M;
  M.gen = gen_name(g);
  M.sigDigest = signature_digest(sig);
  M.N = N;
  M.Np = window_growth(N, g);
  M.source = enumerate_basis(sig, N);
  M.target = enumerate_basis(sig, M.Np);
  std::map<CPattern, int> rowOf;
  for (std::size_t r = 0; r < M.target.size(); ++r)
    rowOf.emplace(M.target[r], static_cast<int>(r));
  const std::size_t cols = M.source.size();
  std::vector<std::vector<std::pair<int, RadicalScalar>>> colEntries(cols);
  // Trace/deletion sinks are not synchronized; fall back to the serial path
  // so their note order stays deterministic.
  const Exec effective =
      (opts.traceSink != nullptr || opts.deletionSink != nullptr) ? Exec::Serial : exec;
  parallel_for(effective, cols, [&](std::size_t c) {
    const LinComb image = apply_symbol(sig, g, LinComb::unit(M.source[c]), opts);
    auto& sink = colEntries[c];
    for (const auto& [p, s] : image.terms) {
      const auto it = rowOf.find(p);
      if (it == rowOf.end())
        throw std::logic_error("generator image escapes the growth window");
      sink.emplace_back(it->second, s);
    }
  });
  for (std::size_t c = 0; c < cols; ++c)
    for (auto& [row, s] : colEntries[c])
      M.entries.emplace(std::pair<int, int>(row, static_cast<int>(c)), std::move(s));
  return M;
}

namespace {

std::string digest_hex(std::uint64_t d) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(d));
  return buf;
}

std::string matrix_header(const GenMatrix& M) {
  return "matrix " + M.gen + " sig=" + digest_hex(M.sigDigest) +
         " N=" + std::to_string(M.N) + " dim=" + std::to_string(M.source.size());
}

// Entry pointers in column-major order (the construction order).
std::vector<std::pair<std::pair<int, int>, const RadicalScalar*>> column_major(
    const GenMatrix& M) {
  std::vector<std::pair<std::pair<int, int>, const RadicalScalar*>> lines;
  lines.reserve(M.entries.size());
  for (const auto& [rc, s] : M.entries)
    lines.push_back({{rc.second, rc.first}, &s});
  std::sort(lines.begin(), lines.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  return lines;
}

}  // namespace

std::string matrix_to_text(const GenMatrix& M) {
  std::string out = matrix_header(M) + "\n";
  for (const auto& [cr, s] : column_major(M))
    out += std::to_string(cr.second) + " " + std::to_string(cr.first) + " " +
           scalar_to_string(*s) + "\n";
  return out;
}

std::string matrix_to_text_numeric(const GenMatrix& M, double v0) {
  std::ostringstream os;
  os << std::setprecision(17);
  os << matrix_header(M) << " v=" << v0 << "\n";
  for (const auto& [cr, s] : column_major(M)) {
    const std::complex<double> z = s->eval_complex(std::complex<double>(v0, 0.0));
    os << cr.second << " " << cr.first << " " << z.real() << " " << z.imag() << "\n";
  }
  return os.str();
}

GenMatrix matrix_from_text(const Signature& sig, const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw std::invalid_argument("empty matrix text");
  std::istringstream hs(line);
  std::string tag, gen, sigTok, nTok, dimTok, extra;
  hs >> tag >> gen >> sigTok >> nTok >> dimTok;
  if (tag != "matrix" || gen.empty() || sigTok.rfind("sig=", 0) != 0 ||
      nTok.rfind("N=", 0) != 0 || dimTok.rfind("dim=", 0) != 0 || (hs >> extra))
    throw std::invalid_argument("malformed matrix header: " + line);
  std::uint64_t digest = 0;
  int N = 0;
  int dim = 0;
  try {
    std::size_t pos = 0;
    const std::string hex = sigTok.substr(4);
    digest = std::stoull(hex, &pos, 16);
    if (pos != hex.size() || hex.empty()) throw std::invalid_argument("digest");
    N = std::stoi(nTok.substr(2));
    dim = std::stoi(dimTok.substr(4));
  } catch (const std::exception&) {
    throw std::invalid_argument("malformed matrix header: " + line);
  }
  if (digest != signature_digest(sig))
    throw std::invalid_argument("matrix signature digest does not match the signature");
  GenMatrix M;
  M.gen = gen;
  M.sigDigest = digest;
  M.N = N;
  M.Np = window_growth(N, gen_parse(gen));
  M.source = enumerate_basis(sig, N);
  M.target = enumerate_basis(sig, M.Np);
  if (static_cast<int>(M.source.size()) != dim)
    throw std::invalid_argument("matrix header dimension does not match the basis");
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    int row = 0;
    int col = 0;
    if (!(ls >> row >> col))
      throw std::invalid_argument("malformed matrix entry: " + line);
    std::string scalarText;
    std::getline(ls, scalarText);
    if (!scalarText.empty() && scalarText.front() == ' ') scalarText.erase(0, 1);
    if (row < 0 || row >= static_cast<int>(M.target.size()) || col < 0 ||
        col >= static_cast<int>(M.source.size()))
      throw std::invalid_argument("matrix entry out of range: " + line);
    const RadicalScalar s = scalar_parse(scalarText);
    if (s.is_zero()) continue;
    if (!M.entries.emplace(std::pair<int, int>(row, col), s).second)
      throw std::invalid_argument("duplicate matrix entry: " + line);
  }
  return M;
}

}  // namespace qcpat
