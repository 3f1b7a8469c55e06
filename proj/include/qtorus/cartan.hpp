#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "qtorus/rational.hpp"

namespace qtorus {

// Cartan matrix with minimal coprime symmetrizers d_i. The bilinear form is
// (alpha_i, alpha_j) = d_i a_ij.
struct CartanData {
    int rank = 0;
    std::vector<std::vector<int>> a;  // a[i][j], 0-based
    std::vector<int> d;

    int aij(int i, int j) const { return a[static_cast<size_t>(i)][static_cast<size_t>(j)]; }
    int di(int i) const { return d[static_cast<size_t>(i)]; }
    // (alpha_i, alpha_j) = d_i a_ij
    int bilinear(int i, int j) const { return di(i) * aij(i, j); }
};

CartanData cartan_from_type(char series, int rank);
CartanData cartan_from_matrix(const std::vector<std::vector<int>>& a);

// l_i = sum_j m_j a_{ji}; throws NegativeL if requested.
std::vector<int> derive_l(const CartanData& c, const std::vector<int>& m, bool require_nonneg);

enum class LatticeChoice { Adjoint, SimplyConnected, Explicit };

// Lattice M with Q <= M <= P, described by beta_i = sum_j n_{ji} lambda_j.
// mmat expresses alpha_i = sum_j mmat_{ji} beta_j; minv is its inverse.
struct LatticeData {
    std::vector<std::vector<int>> n;         // n[j][i] in beta_i = sum_j n_{ji} lambda_j
    std::vector<std::vector<int>> mmat;      // integer by the lattice constraint
    std::vector<std::vector<Rational>> minv; // ||M_ij||
    long det_a = 0;                          // d = det ||a_ij||

    int nji(int j, int i) const { return n[static_cast<size_t>(j)][static_cast<size_t>(i)]; }
    int mji(int j, int i) const { return mmat[static_cast<size_t>(j)][static_cast<size_t>(i)]; }
    const Rational& Mji(int j, int i) const { return minv[static_cast<size_t>(j)][static_cast<size_t>(i)]; }
};

LatticeData lattice_from_choice(const CartanData& c, LatticeChoice choice,
                                const std::vector<std::vector<int>>* explicit_n = nullptr);

enum class Family { Yangian, YangianBorel, QAffine, Uqg };

std::string family_name(Family f);
std::optional<Family> family_from_name(const std::string& s);

// Explicit parameter values for randomized verification; symbols stay
// symbolic where a value is absent.
struct ParamValues {
    std::optional<Rational> lambda;               // q^{1/2}
    std::optional<Rational> hbar;                 // i*hbar combination
    std::vector<std::vector<Rational>> nu;        // [i][s]
    std::vector<std::vector<Rational>> nu_plus;   // Borel
    std::vector<std::vector<Rational>> nu_minus;
    std::vector<std::vector<Rational>> w;         // torus central parameters
    bool any() const {
        return lambda || hbar || !nu.empty() || !nu_plus.empty() || !nu_minus.empty() || !w.empty();
    }
};

// Full representation configuration: multiplicities, derived l_i, the
// R-factor split and (for rational forms) the lattice.
struct RepConfig {
    Family family = Family::Yangian;
    std::vector<int> m;
    std::vector<int> l;        // derived; for Borel: l = lplus - lminus is not used
    std::vector<int> lplus;    // Borel only
    std::vector<int> lminus;   // Borel only
    // rsplit[i] = set of factor indices (1-based, within 1..l_i) assigned to
    // R^(+); the complement goes to R^(-). Default: everything in R^(+).
    std::vector<std::set<int>> rsplit;
    std::optional<LatticeData> lattice;
    ParamValues values;

    int mi(int i) const { return m[static_cast<size_t>(i)]; }
    int li(int i) const { return l[static_cast<size_t>(i)]; }
};

// Validates and completes a RepConfig against CartanData: derives l (or
// checks the Borel balance), fills the default rsplit, checks the lattice.
RepConfig make_rep_config(const CartanData& c, Family family, const std::vector<int>& m,
                          const std::vector<std::set<int>>* rsplit = nullptr,
                          std::optional<LatticeData> lattice = std::nullopt,
                          const std::vector<int>* lplus = nullptr,
                          const std::vector<int>* lminus = nullptr,
                          ParamValues values = {});

}  // namespace qtorus
