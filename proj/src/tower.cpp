#include "moserlp/tower.hpp"

#include "moserlp/errors.hpp"

namespace moser {

namespace {

Enclosure iv_exact(const Big& v, mpfr_prec_t prec) {
  Enclosure e(prec);
  e.lo.set(v, MPFR_RNDD);
  e.hi.set(v, MPFR_RNDU);
  return e;
}

Enclosure iv_add(const Enclosure& a, const Enclosure& b) {
  Enclosure e(a.lo.prec());
  e.lo.add(a.lo, b.lo, MPFR_RNDD);
  e.hi.add(a.hi, b.hi, MPFR_RNDU);
  return e;
}

Enclosure iv_mul(const Enclosure& a, const Enclosure& b) {
  mpfr_prec_t prec = a.lo.prec();
  Enclosure e(prec);
  Big t(prec);
  const Big* as[2] = {&a.lo, &a.hi};
  const Big* bs[2] = {&b.lo, &b.hi};
  bool first = true;
  for (auto* x : as) {
    for (auto* y : bs) {
      t.mul(*x, *y, MPFR_RNDD);
      if (first || t.cmp(e.lo) < 0) e.lo.set(t, MPFR_RNDD);
      t.mul(*x, *y, MPFR_RNDU);
      if (first || t.cmp(e.hi) > 0) e.hi.set(t, MPFR_RNDU);
      first = false;
    }
  }
  return e;
}

}  // namespace

TowerElement::TowerElement(int level, TowerElement lo, TowerElement hi)
    : level_(level),
      lo_(std::make_shared<const TowerElement>(std::move(lo))),
      hi_(std::make_shared<const TowerElement>(std::move(hi))) {}

bool TowerElement::is_zero() const {
  if (level_ == 0) return base_.is_zero();
  return lo_->is_zero() && hi_->is_zero();
}

TowerElement Tower::zero(int level) const {
  TowerElement z;
  for (int k = 1; k <= level; ++k) z = TowerElement(k, z, zero(k - 1));
  return z;
}

TowerElement Tower::lift(const TowerElement& x, int to_level) const {
  TowerElement out = x;
  while (out.level() < to_level) {
    int k = out.level() + 1;
    out = TowerElement(k, out, zero(k - 1));
  }
  return out;
}

TowerElement Tower::add(const TowerElement& a, const TowerElement& b) const {
  int k = std::max(a.level(), b.level());
  TowerElement x = lift(a, k), y = lift(b, k);
  if (k == 0) return TowerElement(x.base() + y.base());
  return TowerElement(k, add(x.lo(), y.lo()), add(x.hi(), y.hi()));
}

TowerElement Tower::sub(const TowerElement& a, const TowerElement& b) const {
  return add(a, neg(b));
}

TowerElement Tower::neg(const TowerElement& a) const {
  if (a.level() == 0) return TowerElement(-a.base());
  return TowerElement(a.level(), neg(a.lo()), neg(a.hi()));
}

TowerElement Tower::mul(const TowerElement& a, const TowerElement& b) const {
  int k = std::max(a.level(), b.level());
  TowerElement x = lift(a, k), y = lift(b, k);
  if (k == 0) return TowerElement(x.base() * y.base());
  TowerElement r = lift(rad_[k - 1], k - 1);
  TowerElement lo = add(mul(x.lo(), y.lo()), mul(mul(x.hi(), y.hi()), r));
  TowerElement hi = add(mul(x.lo(), y.hi()), mul(x.hi(), y.lo()));
  return TowerElement(k, std::move(lo), std::move(hi));
}

TowerElement Tower::inverse(const TowerElement& a) const {
  if (a.is_zero()) throw ValidationError("tower element division by zero");
  if (a.level() == 0) return TowerElement(a.base().inverse());
  if (a.hi().is_zero()) return lift(inverse(a.lo()), a.level());
  int k = a.level();
  TowerElement r = lift(rad_[k - 1], k - 1);
  // (lo + hi g)^-1 = (lo - hi g) / (lo^2 - hi^2 r); the denominator cannot
  // vanish because r is not a square one level down.
  TowerElement den = sub(mul(a.lo(), a.lo()), mul(mul(a.hi(), a.hi()), r));
  if (den.is_zero()) throw ValidationError("degenerate tower: radicand is a square");
  TowerElement deninv = inverse(den);
  return TowerElement(k, mul(a.lo(), deninv), neg(mul(a.hi(), deninv)));
}

TowerElement Tower::div(const TowerElement& a, const TowerElement& b) const {
  return mul(a, inverse(b));
}

bool Tower::equal(const TowerElement& a, const TowerElement& b) const {
  return sub(a, b).is_zero();
}

std::optional<TowerElement> Tower::sqrt(const TowerElement& x) const {
  // The root may need generators above the element's own level, so search
  // from the top of the tower.
  return sqrt_impl(lift(x, levels()));
}

std::optional<TowerElement> Tower::sqrt_impl(const TowerElement& x) const {
  if (x.level() == 0) {
    auto y = field_sqrt(x.base());
    if (!y) return std::nullopt;
    return TowerElement(*y);
  }
  int k = x.level();
  TowerElement r = lift(rad_[k - 1], k - 1);
  const TowerElement& A = x.lo();
  const TowerElement& B = x.hi();
  TowerElement half = lift(from_field(FieldElement(Rational(1, 2))), k - 1);
  if (B.is_zero()) {
    if (auto y = sqrt_impl(A)) return lift(*y, k);
    if (auto q = sqrt_impl(lift(div(A, r), k - 1))) {
      TowerElement y(k, zero(k - 1), *q);
      if (equal(mul(y, y), x)) return sign(y) >= 0 ? y : neg(y);
    }
    return std::nullopt;
  }
  auto s = sqrt_impl(sub(mul(A, A), mul(mul(B, B), r)));
  if (!s) return std::nullopt;
  for (int which = 0; which < 2; ++which) {
    TowerElement t = mul(which == 0 ? add(A, *s) : sub(A, *s), half);
    auto p = sqrt_impl(t);
    if (!p || p->is_zero()) continue;
    TowerElement q = mul(mul(B, inverse(*p)), half);
    TowerElement y(k, *p, q);
    if (equal(mul(y, y), x)) return sign(y) >= 0 ? y : neg(y);
  }
  return std::nullopt;
}

double Tower::to_double(const TowerElement& x) const {
  return to_enclosure(x, 1e-25).mid();
}

Enclosure Tower::to_enclosure(const TowerElement& x, double max_width) const {
  for (mpfr_prec_t prec = 128; prec <= 1 << 16; prec *= 2) {
    // Evaluate bottom-up: generators first, then the element tree.
    std::vector<Enclosure> gens;
    gens.reserve(rad_.size());
    bool bad = false;
    auto eval = [&](auto&& self, const TowerElement& e) -> Enclosure {
      if (e.level() == 0) {
        Enclosure b = e.base().to_enclosure(1e-30);
        Enclosure out(prec);
        out.lo.set(b.lo, MPFR_RNDD);
        out.hi.set(b.hi, MPFR_RNDU);
        return out;
      }
      Enclosure lo = self(self, e.lo());
      Enclosure hi = self(self, e.hi());
      return iv_add(lo, iv_mul(hi, gens[e.level() - 1]));
    };
    for (const auto& rad : rad_) {
      Enclosure rv = eval(eval, lift(rad, static_cast<int>(gens.size())));
      if (rv.lo.sgn() < 0) rv.lo.set(0.0);  // radicands are >= 0
      gens.push_back(enclose_sqrt(rv));
      if (gens.back().hi.is_nan()) { bad = true; break; }
    }
    if (bad) continue;
    Enclosure out = eval(eval, x);
    if (out.width() <= max_width) return out;
  }
  throw ValidationError("tower enclosure did not converge");
}

int Tower::sign(const TowerElement& x) const {
  if (x.is_zero()) return 0;
  for (double w = 1e-20; w >= 1e-300; w *= 1e-40) {
    Enclosure e = to_enclosure(x, w);
    if (!e.contains_zero()) return e.lo.sgn() > 0 ? 1 : -1;
  }
  throw ValidationError("tower sign separation failed");
}

AdjoinResult adjoin_sqrt(const Tower& t, const TowerElement& radicand) {
  if (t.sign(radicand) < 0) throw ValidationError("adjoin_sqrt: negative radicand");
  if (auto y = t.sqrt(radicand)) return {t, *y, false};
  Tower out = t;
  out.rad_.push_back(radicand);
  int k = out.levels();
  TowerElement root(k, out.zero(k - 1),
                    out.lift(out.from_field(FieldElement(Rational(1))), k - 1));
  return {out, root, true};
}

}  // namespace moser
