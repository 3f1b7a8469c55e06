#include "qtorus/cartan.hpp"

#include <algorithm>
#include <numeric>

#include "qtorus/errors.hpp"

namespace qtorus {

namespace {

void check_cartan(const std::vector<std::vector<int>>& a) {
    size_t n = a.size();
    if (n == 0) throw NotCartan("empty matrix");
    for (size_t i = 0; i < n; ++i) {
        if (a[i].size() != n) throw NotCartan("not square");
        if (a[i][i] != 2) throw NotCartan("diagonal entry != 2");
        for (size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            if (a[i][j] > 0) throw NotCartan("positive off-diagonal entry");
            if ((a[i][j] == 0) != (a[j][i] == 0)) throw NotCartan("a_ij=0 but a_ji!=0");
        }
    }
}

std::vector<int> solve_symmetrizers(const std::vector<std::vector<int>>& a) {
    size_t n = a.size();
    // Propagate the ratios d_j/d_i = a_ij/a_ji along edges of each
    // connected component, then scale to minimal coprime integers.
    std::vector<Rational> r(n, Rational(0));
    for (size_t start = 0; start < n; ++start) {
        if (r[start] != 0) continue;
        r[start] = 1;
        std::vector<size_t> stack{start};
        while (!stack.empty()) {
            size_t i = stack.back();
            stack.pop_back();
            for (size_t j = 0; j < n; ++j) {
                if (i == j || a[i][j] == 0) continue;
                Rational rj = r[i] * Rational(a[i][j]) / Rational(a[j][i]);
                if (r[j] == 0) {
                    r[j] = rj;
                    stack.push_back(j);
                } else if (r[j] != rj) {
                    throw NotSymmetrizable("inconsistent ratio cycle");
                }
            }
        }
    }
    mpz_class lcm_den(1);
    for (const auto& q : r) mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), q.get_den().get_mpz_t());
    std::vector<mpz_class> ints(n);
    mpz_class g(0);
    for (size_t i = 0; i < n; ++i) {
        ints[i] = r[i].get_num() * (lcm_den / r[i].get_den());
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), ints[i].get_mpz_t());
    }
    std::vector<int> d(n);
    for (size_t i = 0; i < n; ++i) {
        mpz_class v = ints[i] / g;
        if (v <= 0 || !v.fits_sint_p()) throw NotSymmetrizable("non-positive symmetrizer");
        d[i] = static_cast<int>(v.get_si());
    }
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            if (static_cast<long>(d[i]) * a[i][j] != static_cast<long>(d[j]) * a[j][i])
                throw NotSymmetrizable("d_i a_ij != d_j a_ji");
    return d;
}

}  // namespace

CartanData cartan_from_matrix(const std::vector<std::vector<int>>& a) {
    check_cartan(a);
    CartanData c;
    c.rank = static_cast<int>(a.size());
    c.a = a;
    c.d = solve_symmetrizers(a);
    return c;
}

CartanData cartan_from_type(char series, int rank) {
    auto chain = [](int n) {
        std::vector<std::vector<int>> a(static_cast<size_t>(n), std::vector<int>(static_cast<size_t>(n), 0));
        for (int i = 0; i < n; ++i) a[static_cast<size_t>(i)][static_cast<size_t>(i)] = 2;
        for (int i = 0; i + 1 < n; ++i) {
            a[static_cast<size_t>(i)][static_cast<size_t>(i + 1)] = -1;
            a[static_cast<size_t>(i + 1)][static_cast<size_t>(i)] = -1;
        }
        return a;
    };
    std::vector<std::vector<int>> a;
    switch (series) {
        case 'A':
            if (rank < 1) throw UnknownType("A requires rank >= 1");
            a = chain(rank);
            break;
        case 'B':
            // alpha_rank short: a_{r-1,r} = -1, a_{r,r-1} = -2, d = (2,..,2,1)
            if (rank < 2) throw UnknownType("B requires rank >= 2");
            a = chain(rank);
            a[static_cast<size_t>(rank - 1)][static_cast<size_t>(rank - 2)] = -2;
            break;
        case 'C':
            if (rank < 2) throw UnknownType("C requires rank >= 2");
            a = chain(rank);
            a[static_cast<size_t>(rank - 2)][static_cast<size_t>(rank - 1)] = -2;
            break;
        case 'D':
            if (rank < 3) throw UnknownType("D requires rank >= 3");
            a = chain(rank);
            a[static_cast<size_t>(rank - 1)][static_cast<size_t>(rank - 2)] = 0;
            a[static_cast<size_t>(rank - 2)][static_cast<size_t>(rank - 1)] = 0;
            a[static_cast<size_t>(rank - 1)][static_cast<size_t>(rank - 3)] = -1;
            a[static_cast<size_t>(rank - 3)][static_cast<size_t>(rank - 1)] = -1;
            break;
        case 'E': {
            if (rank < 6 || rank > 8) throw UnknownType("E requires rank 6..8");
            // Bourbaki numbering: node 2 attaches to node 4 of the chain
            // 1-3-4-5-...-rank.
            a = chain(rank);
            for (int i = 0; i < rank; ++i)
                for (int j = 0; j < rank; ++j)
                    if (i != j) a[static_cast<size_t>(i)][static_cast<size_t>(j)] = 0;
            auto link = [&](int i, int j) {
                a[static_cast<size_t>(i - 1)][static_cast<size_t>(j - 1)] = -1;
                a[static_cast<size_t>(j - 1)][static_cast<size_t>(i - 1)] = -1;
            };
            link(1, 3);
            link(3, 4);
            link(2, 4);
            for (int k = 4; k < rank; ++k) link(k, k + 1);
            break;
        }
        case 'F':
            if (rank != 4) throw UnknownType("F requires rank 4");
            a = chain(4);
            a[2][1] = -2;  // a_32 = -2, alpha_3 alpha_4 short, d = (2,2,1,1)
            break;
        case 'G':
            if (rank != 2) throw UnknownType("G requires rank 2");
            a = {{2, -3}, {-1, 2}};  // d = (1,3)
            break;
        default:
            throw UnknownType(std::string("series ") + series);
    }
    return cartan_from_matrix(a);
}

std::vector<int> derive_l(const CartanData& c, const std::vector<int>& m, bool require_nonneg) {
    if (static_cast<int>(m.size()) != c.rank) throw ConfigMismatch("m size != rank");
    for (int mi : m)
        if (mi < 1) throw ConfigMismatch("multiplicities must be >= 1");
    std::vector<int> l(static_cast<size_t>(c.rank), 0);
    for (int i = 0; i < c.rank; ++i) {
        long s = 0;
        for (int j = 0; j < c.rank; ++j) s += static_cast<long>(m[static_cast<size_t>(j)]) * c.aij(j, i);
        if (require_nonneg && s < 0)
            throw NegativeL("l_" + std::to_string(i + 1) + " = " + std::to_string(s));
        l[static_cast<size_t>(i)] = static_cast<int>(s);
    }
    return l;
}

namespace {

// Inverse of an integer matrix over the rationals; throws on singularity.
std::vector<std::vector<Rational>> invert(const std::vector<std::vector<Rational>>& m) {
    size_t n = m.size();
    std::vector<std::vector<Rational>> a = m;
    std::vector<std::vector<Rational>> inv(n, std::vector<Rational>(n, Rational(0)));
    for (size_t i = 0; i < n; ++i) inv[i][i] = 1;
    for (size_t col = 0; col < n; ++col) {
        size_t piv = col;
        while (piv < n && a[piv][col] == 0) ++piv;
        if (piv == n) throw LatticeOutOfRange("singular basis matrix");
        std::swap(a[piv], a[col]);
        std::swap(inv[piv], inv[col]);
        Rational p = a[col][col];
        for (size_t j = 0; j < n; ++j) {
            a[col][j] /= p;
            inv[col][j] /= p;
        }
        for (size_t r = 0; r < n; ++r) {
            if (r == col || a[r][col] == 0) continue;
            Rational f = a[r][col];
            for (size_t j = 0; j < n; ++j) {
                a[r][j] -= f * a[col][j];
                inv[r][j] -= f * inv[col][j];
            }
        }
    }
    return inv;
}

long det_int(const std::vector<std::vector<int>>& m) {
    size_t n = m.size();
    std::vector<std::vector<Rational>> a(n, std::vector<Rational>(n));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) a[i][j] = m[i][j];
    Rational det(1);
    for (size_t col = 0; col < n; ++col) {
        size_t piv = col;
        while (piv < n && a[piv][col] == 0) ++piv;
        if (piv == n) return 0;
        if (piv != col) {
            std::swap(a[piv], a[col]);
            det = -det;
        }
        det *= a[col][col];
        for (size_t r = col + 1; r < n; ++r) {
            if (a[r][col] == 0) continue;
            Rational f = a[r][col] / a[col][col];
            for (size_t j = col; j < n; ++j) a[r][j] -= f * a[col][j];
        }
    }
    return static_cast<long>(mpz_class(det.get_num() / det.get_den()).get_si());
}

}  // namespace

LatticeData lattice_from_choice(const CartanData& c, LatticeChoice choice,
                                const std::vector<std::vector<int>>* explicit_n) {
    size_t n = static_cast<size_t>(c.rank);
    LatticeData lat;
    lat.det_a = det_int(c.a);
    if (choice == LatticeChoice::Adjoint) {
        // beta_i = alpha_i = sum_j a_{ji} lambda_j
        lat.n.assign(n, std::vector<int>(n, 0));
        for (size_t j = 0; j < n; ++j)
            for (size_t i = 0; i < n; ++i) lat.n[j][i] = c.a[j][i];
    } else if (choice == LatticeChoice::SimplyConnected) {
        lat.n.assign(n, std::vector<int>(n, 0));
        for (size_t i = 0; i < n; ++i) lat.n[i][i] = 1;
    } else {
        if (explicit_n == nullptr) throw LatticeOutOfRange("explicit lattice requires a matrix");
        if (explicit_n->size() != n) throw LatticeOutOfRange("lattice matrix size != rank");
        lat.n = *explicit_n;
    }
    // mmat = n^{-1} a must be an integer matrix (alpha in the beta basis).
    std::vector<std::vector<Rational>> nq(n, std::vector<Rational>(n));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) nq[i][j] = lat.n[i][j];
    auto ninv = invert(nq);
    lat.mmat.assign(n, std::vector<int>(n, 0));
    for (size_t j = 0; j < n; ++j) {
        for (size_t i = 0; i < n; ++i) {
            Rational v(0);
            for (size_t t = 0; t < n; ++t) v += ninv[j][t] * Rational(c.a[t][i]);
            if (v.get_den() != 1) throw LatticeOutOfRange("lattice does not contain the root lattice");
            lat.mmat[j][i] = static_cast<int>(v.get_num().get_si());
        }
    }
    std::vector<std::vector<Rational>> mq(n, std::vector<Rational>(n));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) mq[i][j] = lat.mmat[i][j];
    lat.minv = invert(mq);
    return lat;
}

std::string family_name(Family f) {
    switch (f) {
        case Family::Yangian: return "yangian";
        case Family::YangianBorel: return "yangian-borel";
        case Family::QAffine: return "qaffine";
        case Family::Uqg: return "uqg";
    }
    return "?";
}

std::optional<Family> family_from_name(const std::string& s) {
    if (s == "yangian") return Family::Yangian;
    if (s == "yangian-borel") return Family::YangianBorel;
    if (s == "qaffine") return Family::QAffine;
    if (s == "uqg") return Family::Uqg;
    return std::nullopt;
}

RepConfig make_rep_config(const CartanData& c, Family family, const std::vector<int>& m,
                          const std::vector<std::set<int>>* rsplit,
                          std::optional<LatticeData> lattice, const std::vector<int>* lplus,
                          const std::vector<int>* lminus, ParamValues values) {
    RepConfig cfg;
    cfg.family = family;
    cfg.m = m;
    cfg.values = std::move(values);
    if (family == Family::YangianBorel) {
        if (lplus == nullptr || lminus == nullptr)
            throw ConfigMismatch("yangian-borel requires lplus and lminus");
        if (static_cast<int>(lplus->size()) != c.rank || static_cast<int>(lminus->size()) != c.rank)
            throw ConfigMismatch("lplus/lminus size != rank");
        std::vector<int> bal = derive_l(c, m, false);
        for (int i = 0; i < c.rank; ++i) {
            if ((*lplus)[static_cast<size_t>(i)] < 0 || (*lminus)[static_cast<size_t>(i)] < 0)
                throw ConfigMismatch("negative l+ or l-");
            if ((*lplus)[static_cast<size_t>(i)] - (*lminus)[static_cast<size_t>(i)] != bal[static_cast<size_t>(i)])
                throw ConfigMismatch("l+ - l- != sum_j m_j a_ji at node " + std::to_string(i + 1));
        }
        cfg.lplus = *lplus;
        cfg.lminus = *lminus;
        cfg.l = bal;
    } else {
        cfg.l = derive_l(c, m, /*require_nonneg=*/true);
    }
    if (family == Family::Uqg) {
        if (!lattice) throw ConfigMismatch("uqg requires a lattice");
        cfg.lattice = std::move(lattice);
    } else if (lattice) {
        cfg.lattice = std::move(lattice);
    }
    // R-split: when given, an entry is the full R^(+) index set for its node
    // (possibly empty); otherwise all factors go to R^(+).
    cfg.rsplit.assign(static_cast<size_t>(c.rank), {});
    if (rsplit != nullptr && static_cast<int>(rsplit->size()) != c.rank)
        throw ConfigMismatch("rsplit size != rank");
    for (int i = 0; i < c.rank; ++i) {
        int li = (family == Family::YangianBorel) ? 0 : cfg.l[static_cast<size_t>(i)];
        if (rsplit != nullptr) {
            for (int s : (*rsplit)[static_cast<size_t>(i)])
                if (s < 1 || s > li) throw ConfigMismatch("rsplit index out of range at node " + std::to_string(i + 1));
            cfg.rsplit[static_cast<size_t>(i)] = (*rsplit)[static_cast<size_t>(i)];
        } else {
            for (int s = 1; s <= li; ++s) cfg.rsplit[static_cast<size_t>(i)].insert(s);
        }
    }
    return cfg;
}

}  // namespace qtorus
