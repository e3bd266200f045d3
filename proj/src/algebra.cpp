#include "siltred/algebra.hpp"

#include <algorithm>

#include "siltred/error.hpp"

namespace siltred {

namespace {

QVec scaled(const QVec& v, const Rat& c) {
    QVec out(v.size());
    for (size_t i = 0; i < v.size(); ++i) out[i] = v[i] * c;
    return out;
}

QVec add(const QVec& a, const QVec& b) {
    QVec out(a.size());
    for (size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
    return out;
}

QVec sub(const QVec& a, const QVec& b) {
    QVec out(a.size());
    for (size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
    return out;
}

bool vec_zero(const QVec& v) {
    return std::all_of(v.begin(), v.end(), [](const Rat& r) { return r.is_zero(); });
}

// Divisors of |n| by trial division; empty when n is too large to enumerate.
std::vector<mpz_class> divisors(const mpz_class& n_in) {
    mpz_class n = abs(n_in);
    std::vector<mpz_class> out;
    if (n == 0 || !n.fits_slong_p()) return out;
    long nl = n.get_si();
    for (long d = 1; static_cast<double>(d) * d <= static_cast<double>(nl); ++d) {
        if (nl % d == 0) {
            out.emplace_back(d);
            if (d != nl / d) out.emplace_back(nl / d);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

FinDimAlgebra::FinDimAlgebra(int dim, std::vector<std::vector<QVec>> mult, QVec unit)
    : dim_(dim), mult_(std::move(mult)), unit_(std::move(unit)) {}

QVec FinDimAlgebra::mul(const QVec& x, const QVec& y) const {
    QVec out(dim_);
    for (int i = 0; i < dim_; ++i) {
        if (x[i].is_zero()) continue;
        for (int j = 0; j < dim_; ++j) {
            if (y[j].is_zero()) continue;
            Rat c = x[i] * y[j];
            const QVec& m = mult_[i][j];
            for (int k = 0; k < dim_; ++k)
                if (!m[k].is_zero()) out[k] += c * m[k];
        }
    }
    return out;
}

QMat FinDimAlgebra::left_mult_matrix(const QVec& x) const {
    QMat L(dim_, dim_);
    for (int j = 0; j < dim_; ++j) {
        QVec ej(dim_);
        ej[j] = Rat(1);
        QVec col = mul(x, ej);
        for (int i = 0; i < dim_; ++i) L.at(i, j) = col[i];
    }
    return L;
}

bool FinDimAlgebra::invariants_ok() const {
    for (int i = 0; i < dim_; ++i) {
        QVec bi(dim_);
        bi[i] = Rat(1);
        if (mul(unit_, bi) != bi || mul(bi, unit_) != bi) return false;
    }
    for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < dim_; ++j)
            for (int k = 0; k < dim_; ++k) {
                QVec bi(dim_), bj(dim_), bk(dim_);
                bi[i] = Rat(1);
                bj[j] = Rat(1);
                bk[k] = Rat(1);
                if (mul(mul(bi, bj), bk) != mul(bi, mul(bj, bk))) return false;
            }
    return true;
}

void FinDimAlgebra::check_invariants() const {
    if (invariants_checked_) return;
    require(invariants_ok(), ErrorKind::InvariantViolation,
            "structure constants fail associativity or unit law");
    invariants_checked_ = true;
}

std::vector<QVec> FinDimAlgebra::radical_no_check() const {
    // Dickson: in char 0, rad(A) = { x : tr(L_x L_b) = 0 for all basis b }.
    std::vector<QMat> L(dim_);
    for (int i = 0; i < dim_; ++i) {
        QVec bi(dim_);
        bi[i] = Rat(1);
        L[i] = left_mult_matrix(bi);
    }
    QMat G(dim_, dim_);
    for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < dim_; ++j) {
            Rat tr;
            for (int a = 0; a < dim_; ++a)
                for (int b = 0; b < dim_; ++b) tr += L[i].at(a, b) * L[j].at(b, a);
            G.at(i, j) = tr;
        }
    return G.kernel_basis();
}

std::vector<QVec> FinDimAlgebra::radical() const {
    check_invariants();
    std::vector<QVec> N = radical_no_check();

    // Post-check: two-sided ideal, nilpotent, and semisimple quotient.
    std::vector<QVec> span = row_space_basis(N);
    for (int i = 0; i < dim_; ++i) {
        QVec bi(dim_);
        bi[i] = Rat(1);
        for (const QVec& n : N) {
            require(in_span(span, mul(bi, n)) && in_span(span, mul(n, bi)),
                    ErrorKind::InvariantViolation, "radical candidate is not a two-sided ideal");
        }
    }
    std::vector<QVec> power = span;
    for (int step = 0; step <= dim_ + 1 && !power.empty(); ++step) {
        require(step <= dim_, ErrorKind::InvariantViolation, "radical candidate is not nilpotent");
        std::vector<QVec> next;
        for (const QVec& a : power)
            for (const QVec& b : span) next.push_back(mul(a, b));
        next = row_space_basis(next);
        if (static_cast<int>(next.size()) >= static_cast<int>(power.size()) && !next.empty())
            require(span_rank(next) < span_rank(power), ErrorKind::InvariantViolation,
                    "radical candidate power chain does not descend");
        power = next;
    }
    if (!N.empty()) {
        Quotient q = quotient_by(N);
        require(q.algebra.radical_no_check().empty(), ErrorKind::InvariantViolation,
                "quotient by radical candidate still has radical");
    }
    return N;
}

FinDimAlgebra::Quotient FinDimAlgebra::quotient_by(const std::vector<QVec>& ideal) const {
    std::vector<QVec> I = row_space_basis(ideal);
    std::vector<int> comp = complement_coords(I, dim_);
    int qd = static_cast<int>(comp.size());

    // change-of-basis matrix: columns = complement unit vectors then ideal basis
    QMat M(dim_, dim_);
    for (int k = 0; k < qd; ++k) M.at(comp[k], k) = Rat(1);
    for (size_t k = 0; k < I.size(); ++k)
        for (int i = 0; i < dim_; ++i) M.at(i, qd + static_cast<int>(k)) = I[k][i];
    std::optional<QMat> Minv = solve_matrix(M, QMat::identity(dim_));
    require(Minv.has_value(), ErrorKind::InvariantViolation, "quotient basis not invertible");

    QMat proj(qd, dim_);
    for (int r = 0; r < qd; ++r)
        for (int c = 0; c < dim_; ++c) proj.at(r, c) = Minv->at(r, c);

    std::vector<QVec> lifts(qd, QVec(dim_));
    for (int k = 0; k < qd; ++k) lifts[k][comp[k]] = Rat(1);

    std::vector<std::vector<QVec>> qmult(qd, std::vector<QVec>(qd));
    for (int i = 0; i < qd; ++i)
        for (int j = 0; j < qd; ++j) qmult[i][j] = proj.apply(mul(lifts[i], lifts[j]));
    QVec qunit = proj.apply(unit_);

    return Quotient{FinDimAlgebra(qd, std::move(qmult), std::move(qunit)), std::move(proj),
                    std::move(lifts)};
}

QVec FinDimAlgebra::min_poly(const QVec& x) const {
    std::vector<QVec> powers{unit_};
    QVec cur = unit_;
    for (int m = 1; m <= dim_ + 1; ++m) {
        cur = mul(cur, x);
        if (auto coords = coordinates_in(powers, cur)) {
            QVec poly(m + 1);
            for (int i = 0; i < m; ++i) poly[i] = -(*coords)[i];
            poly[m] = Rat(1);
            return poly;
        }
        powers.push_back(cur);
    }
    fail(ErrorKind::InvariantViolation, "minimal polynomial search exceeded dimension bound");
}

std::vector<Rat> rational_roots(const QVec& poly) {
    // clear denominators
    mpz_class lcm = 1;
    for (const Rat& c : poly) lcm = lcm / gcd(lcm, c.den()) * c.den();
    std::vector<mpz_class> ip(poly.size());
    for (size_t i = 0; i < poly.size(); ++i) ip[i] = poly[i].num() * (lcm / poly[i].den());
    // strip high zero coefficients
    while (!ip.empty() && ip.back() == 0) ip.pop_back();
    std::vector<Rat> roots;
    if (ip.size() <= 1) return roots;
    size_t low = 0;
    while (low < ip.size() && ip[low] == 0) ++low;
    if (low > 0) roots.push_back(Rat(0));
    if (low + 1 >= ip.size()) return roots;
    mpz_class a0 = ip[low], an = ip.back();
    std::vector<mpz_class> ps = divisors(a0), qs = divisors(an);
    for (const mpz_class& p : ps)
        for (const mpz_class& q : qs)
            for (int s : {1, -1}) {
                Rat cand(mpz_class(s * p));
                cand /= Rat(q);
                // Horner on the full polynomial
                Rat v;
                for (size_t i = poly.size(); i-- > 0;) v = v * cand + poly[i];
                if (v.is_zero() && std::find(roots.begin(), roots.end(), cand) == roots.end())
                    roots.push_back(cand);
            }
    std::sort(roots.begin(), roots.end());
    return roots;
}

QVec eval_poly(const FinDimAlgebra& A, const QVec& poly, const QVec& x) {
    QVec acc(A.dim());
    for (size_t i = poly.size(); i-- > 0;) {
        acc = A.mul(acc, x);
        if (!poly[i].is_zero()) acc = add(acc, scaled(A.unit(), poly[i]));
    }
    return acc;
}

bool FinDimAlgebra::is_idempotent(const QVec& e) const { return mul(e, e) == e; }

int FinDimAlgebra::semisimple_dim() const { return dim_ - static_cast<int>(radical_no_check().size()); }

bool FinDimAlgebra::is_local() const { return semisimple_dim() == 1; }

QVec FinDimAlgebra::split_idempotent_semisimple() const {
    std::vector<QVec> candidates;
    for (int i = 0; i < dim_; ++i) {
        QVec b(dim_);
        b[i] = Rat(1);
        candidates.push_back(b);
    }
    int base = dim_;
    for (int i = 0; i < base; ++i)
        for (int j = i + 1; j < base; ++j) {
            candidates.push_back(add(candidates[i], candidates[j]));
            candidates.push_back(sub(candidates[i], candidates[j]));
            candidates.push_back(add(candidates[i], scaled(candidates[j], Rat(2))));
        }

    for (const QVec& s : candidates) {
        QVec f = min_poly(s);
        if (f.size() <= 2) continue;  // degree < 2 cannot split
        for (const Rat& c : rational_roots(f)) {
            // synthetic division f = (x - c) h
            size_t deg = f.size() - 1;
            QVec h(deg);
            Rat carry = f[deg];
            for (size_t i = deg; i-- > 0;) {
                h[i] = carry;
                carry = f[i] + carry * c;
            }
            // h(c) != 0 means (x-c) and h are coprime
            Rat hc;
            for (size_t i = h.size(); i-- > 0;) hc = hc * c + h[i];
            if (hc.is_zero()) continue;
            QVec e = eval_poly(*this, h, s);
            e = scaled(e, hc.inv());
            if (!is_idempotent(e)) continue;
            if (vec_zero(e) || e == unit_) continue;
            return e;
        }
    }
    return {};
}

std::vector<QVec> FinDimAlgebra::primitive_idempotents() const {
    check_invariants();

    struct Corner {
        std::vector<QVec> basis;  // A-coordinate basis of eAe
        QVec unit;                // the idempotent e in A coordinates
    };

    std::vector<QVec> out;
    std::vector<Corner> stack;
    {
        std::vector<QVec> full;
        for (int i = 0; i < dim_; ++i) {
            QVec b(dim_);
            b[i] = Rat(1);
            full.push_back(b);
        }
        stack.push_back(Corner{std::move(full), unit_});
    }

    while (!stack.empty()) {
        Corner cor = std::move(stack.back());
        stack.pop_back();
        int cd = static_cast<int>(cor.basis.size());

        // corner algebra in its own coordinates
        std::vector<std::vector<QVec>> cmult(cd, std::vector<QVec>(cd));
        for (int i = 0; i < cd; ++i)
            for (int j = 0; j < cd; ++j) {
                QVec prod = mul(cor.basis[i], cor.basis[j]);
                auto coords = coordinates_in(cor.basis, prod);
                require(coords.has_value(), ErrorKind::InvariantViolation,
                        "corner subspace not closed under multiplication");
                cmult[i][j] = *coords;
            }
        auto cunit = coordinates_in(cor.basis, cor.unit);
        require(cunit.has_value(), ErrorKind::InvariantViolation, "corner unit outside corner");
        FinDimAlgebra C(cd, std::move(cmult), *cunit);

        std::vector<QVec> rad = C.radical_no_check();
        int ssdim = cd - static_cast<int>(rad.size());
        if (ssdim == 1) {
            out.push_back(cor.unit);
            continue;
        }

        FinDimAlgebra::Quotient q = C.quotient_by(rad);
        QVec ebar = q.algebra.split_idempotent_semisimple();
        if (ebar.empty())
            fail(ErrorKind::IdempotentSearchIncomplete,
                 "cannot split a non-local corner (semisimple dim " + std::to_string(ssdim) + ")");

        // lift to the corner: e <- 3e^2 - 2e^3 converges modulo the nilpotent radical
        QVec e(cd);
        for (int k = 0; k < q.algebra.dim(); ++k)
            if (!ebar[k].is_zero()) e = add(e, scaled(q.lifts[k], ebar[k]));
        bool lifted = false;
        for (int it = 0; it < 64; ++it) {
            if (C.is_idempotent(e)) { lifted = true; break; }
            QVec e2 = C.mul(e, e);
            QVec e3 = C.mul(e2, e);
            e = sub(scaled(e2, Rat(3)), scaled(e3, Rat(2)));
        }
        require(lifted, ErrorKind::IdempotentSearchIncomplete, "idempotent lifting did not converge");

        // back to A coordinates
        QVec eA(dim_);
        for (int k = 0; k < cd; ++k)
            if (!e[k].is_zero()) eA = add(eA, scaled(cor.basis[k], e[k]));
        QVec fA = sub(cor.unit, eA);

        auto corner_of = [&](const QVec& idem) {
            std::vector<QVec> vecs;
            for (const QVec& b : cor.basis) vecs.push_back(mul(mul(idem, b), idem));
            return row_space_basis(vecs);
        };
        stack.push_back(Corner{corner_of(fA), fA});
        stack.push_back(Corner{corner_of(eA), eA});
    }

    // final verification: orthogonal, complete, primitive
    QVec total(dim_);
    for (const QVec& e : out) {
        require(is_idempotent(e), ErrorKind::InvariantViolation, "non-idempotent output");
        total = add(total, e);
    }
    require(total == unit_, ErrorKind::InvariantViolation, "idempotents do not sum to 1");
    for (size_t i = 0; i < out.size(); ++i)
        for (size_t j = 0; j < out.size(); ++j)
            if (i != j)
                require(vec_zero(mul(out[i], out[j])), ErrorKind::InvariantViolation,
                        "idempotents not orthogonal");
    return out;
}

}  // namespace siltred
