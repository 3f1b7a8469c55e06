#pragma once

#include <memory>
#include <string>
#include <vector>

#include "qtorus/cartan.hpp"
#include "qtorus/ratfunc.hpp"
#include "qtorus/symbols.hpp"

namespace qtorus {

enum class InstanceKind { Additive, Multiplicative };

// Exponent vector over the shift generators (beta_{i,k} or u_{i,k}).
using ShiftMono = std::vector<std::int32_t>;

// One verification universe: frozen symbol table, shift slots and the shift
// action on the coefficient field. Immutable after construction; shared by
// every value in a run.
class Context {
  public:
    Context(CartanData cartan, RepConfig cfg);

    const CartanData& cartan() const { return cartan_; }
    const RepConfig& cfg() const { return cfg_; }
    InstanceKind instance() const { return instance_; }
    const SymbolTable* table() const { return &table_; }

    int rank() const { return cartan_.rank; }
    int slot_count() const { return static_cast<int>(slots_.size()); }
    int slot(int i, int k) const { return slot_of_[static_cast<size_t>(i)][static_cast<size_t>(k)]; }
    std::pair<int, int> slot_nodes(int s) const { return slots_[static_cast<size_t>(s)]; }
    ShiftMono unit_shift() const { return ShiftMono(slots_.size(), 0); }

    // --- symbol access -----------------------------------------------------
    SymbolId gamma(int i, int k) const { return gamma_[static_cast<size_t>(i)][static_cast<size_t>(k)]; }
    SymbolId vsym(int i, int k) const { return v_[static_cast<size_t>(i)][static_cast<size_t>(k)]; }
    SymbolId lambda() const { return lambda_; }
    SymbolId hbar_sym() const { return h_; }
    SymbolId spectral(const std::string& name) const;
    const std::vector<SymbolId>& spectral_ids() const { return spectral_; }
    bool is_spectral(SymbolId id) const { return table_.kind(id) == SymbolKind::Spectral; }

    // Parameters that may be symbolic or explicit rationals.
    RatFunc hbar() const;                   // the central i*hbar combination
    RatFunc nu(int i, int s) const;         // s is 1-based
    RatFunc nu_pm(int i, int s, bool plus) const;
    RatFunc wparam(int i, int s) const;     // w_{i,s}
    RatFunc wparam_pow(int i, int s, int e) const;

    // q_i^e as an element of the coefficient field; e may be half-integral
    // as long as 2*d_i*e is an integer.
    RatFunc q_power(int i, const Rational& e) const;
    // plain q^e with e*2 integral
    RatFunc q_to(const Rational& e) const;

    // d_i^{-1/2} via the adjoined sqrt symbols.
    RatFunc d_inv_sqrt(int i) const;

    // sigma^m as a field automorphism of the coefficient field.
    RatFunc sigma(const ShiftMono& m, const RatFunc& f) const;
    // True when sigma moves this symbol (gamma resp. v kinds).
    bool sigma_moves(SymbolId id) const;

    RatFunc rat_constant(const Rational& c) const { return RatFunc::constant(&table_, c); }
    RatFunc rat_symbol(SymbolId id, int e = 1) const { return RatFunc::symbol(&table_, id, e); }
    Poly poly_symbol(SymbolId id, int e = 1) const { return Poly::symbol(&table_, id, e); }
    Poly poly_constant(const Rational& c) const { return Poly::constant(&table_, c); }

    std::string shift_name(int s) const;

  private:
    CartanData cartan_;
    RepConfig cfg_;
    InstanceKind instance_;
    SymbolTable table_;

    SymbolId lambda_ = -1, h_ = -1, s2_ = -1, s3_ = -1;
    std::vector<std::vector<SymbolId>> gamma_, v_, nu_, nplus_, nminus_, w_;
    std::vector<SymbolId> spectral_;
    std::vector<std::pair<int, int>> slots_;
    std::vector<std::vector<int>> slot_of_;
};

using ContextPtr = std::shared_ptr<const Context>;

ContextPtr make_context(CartanData cartan, RepConfig cfg);

}  // namespace qtorus
