#pragma once

#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "fpdde/scalar.hpp"

namespace fpdde {

/* An additive shift rule g(z + delta) = g(z) + adds. `delta` is given in
   full m-length coordinates; only the restriction to the symbol's
   depends_on variables is meaningful. */
struct ShiftRule {
    std::vector<Scalar> delta;
    Scalar adds;
};

/* An uninterpreted entire function of a subset of z2..zm, the artifact's
   model of the theorem's g_i. Never depends on z1, so d/dz1 == 0, and it
   carries only additive shift rules; rules compose over integer
   combinations (negative multiples included, since g(z+d)=g(z)+s pins
   g(z-d)=g(z)-s). Immutable after registration. */
class OpaqueSymbol {
  public:
    OpaqueSymbol(std::string name, int id, int m, std::set<int> depends,
                 std::vector<ShiftRule> rules);

    const std::string& name() const { return name_; }
    int id() const { return id_; }
    int ambient_m() const { return m_; }
    const std::set<int>& depends_on() const { return depends_; }
    const std::vector<ShiftRule>& rules() const { return rules_; }

    /* The additive constant for shifting by c (full m-length vector),
       judged on the restriction to depends_on. The zero restriction is
       always derivable (constant 0). Search is over small integer
       combinations of the registered rules. */
    std::optional<Scalar> derive_shift(std::span<const Scalar> c) const;

  private:
    std::string name_;
    int id_;
    int m_;
    std::set<int> depends_;
    std::vector<ShiftRule> rules_;
};

using SymbolPtr = std::shared_ptr<const OpaqueSymbol>;

/* Registration happens in a setup phase; ids are dense and stable, and
   double as polynomial variable slots (z1..zm occupy 0..m-1, symbol k
   occupies m+k). */
class SymbolRegistry {
  public:
    explicit SymbolRegistry(int m);

    int m() const { return m_; }
    int size() const { return static_cast<int>(syms_.size()); }
    int nvars() const { return m_ + size(); }

    SymbolPtr declare(const std::string& name, std::set<int> depends,
                      std::vector<ShiftRule> rules);
    SymbolPtr find(const std::string& name) const;  // nullptr when absent
    SymbolPtr at(int id) const { return syms_.at(static_cast<std::size_t>(id)); }

  private:
    int m_;
    std::vector<SymbolPtr> syms_;
};

}  // namespace fpdde
