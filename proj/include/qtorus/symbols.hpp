#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "qtorus/errors.hpp"

namespace qtorus {

using SymbolId = int;

enum class SymbolKind {
    Lambda,   // q^{1/2}, invertible
    Hbar,     // the central combination i*hbar, one symbol
    Gamma,    // gamma_{i,k}, moved by additive shifts
    Nu,       // nu_{i,s}
    NuPlus,   // nu^+_{i,s} (Borel)
    NuMinus,  // nu^-_{i,s} (Borel)
    W,        // w_{i,s}, central torus elements, invertible
    V,        // v_{i,k}, invertible, moved by multiplicative shifts
    Spectral, // u, v, z, w, u_1..u_m; central w.r.t. all shifts
    SqrtD,    // s_2 or s_3 with rewrite s_d^2 = d
};

struct SymbolInfo {
    std::string name;
    SymbolKind kind = SymbolKind::Spectral;
    int sqrt_value = 0;  // 2 or 3 for SqrtD, else 0
    int node = -1;       // 1-based Dynkin node for indexed families
    int index = -1;      // 1-based k/s index
};

// Frozen registry of every symbol in a configuration. All Poly/RatFunc
// values in one computation share a single table; exponent vectors are
// indexed by SymbolId.
class SymbolTable {
  public:
    SymbolId declare(SymbolInfo info) {
        if (frozen_) throw Error("SymbolTable: declare after freeze");
        if (by_name_.count(info.name))
            throw Error("SymbolTable: duplicate symbol " + info.name);
        SymbolId id = static_cast<SymbolId>(syms_.size());
        by_name_[info.name] = id;
        syms_.push_back(std::move(info));
        return id;
    }

    void freeze() { frozen_ = true; }
    bool frozen() const { return frozen_; }

    int size() const { return static_cast<int>(syms_.size()); }
    const SymbolInfo& info(SymbolId id) const { return syms_.at(static_cast<size_t>(id)); }
    const std::string& name(SymbolId id) const { return info(id).name; }
    SymbolKind kind(SymbolId id) const { return info(id).kind; }

    SymbolId find(const std::string& name) const {
        auto it = by_name_.find(name);
        return it == by_name_.end() ? -1 : it->second;
    }

    bool is_sqrt(SymbolId id) const { return kind(id) == SymbolKind::SqrtD; }

  private:
    std::vector<SymbolInfo> syms_;
    std::map<std::string, SymbolId> by_name_;
    bool frozen_ = false;
};

}  // namespace qtorus
