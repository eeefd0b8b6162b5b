#include "fpdde/symbol.hpp"

#include <algorithm>

#include "fpdde/errors.hpp"

namespace fpdde {

OpaqueSymbol::OpaqueSymbol(std::string name, int id, int m, std::set<int> depends,
                           std::vector<ShiftRule> rules)
    : name_(std::move(name)), id_(id), m_(m), depends_(std::move(depends)),
      rules_(std::move(rules)) {
    if (depends_.count(1))
        throw Error("opaque symbol '" + name_ + "' may not depend on z1");
    for (int v : depends_)
        if (v < 2 || v > m_)
            throw Error("opaque symbol '" + name_ + "' depends on z" + std::to_string(v) +
                        " outside 2.." + std::to_string(m_));
    for (auto& r : rules_) {
        if (static_cast<int>(r.delta.size()) != m_)
            throw Error("shift rule for '" + name_ + "' has wrong arity");
        // the restriction to depends_on is the rule's content; a zero
        // restriction can only add zero
        bool zero = true;
        for (int v : depends_)
            if (!r.delta[static_cast<std::size_t>(v - 1)].is_zero()) zero = false;
        if (zero && !r.adds.is_zero())
            throw Error("inconsistent shift rule for '" + name_ +
                        "': zero shift with nonzero increment");
    }
}

std::optional<Scalar> OpaqueSymbol::derive_shift(std::span<const Scalar> c) const {
    // restriction of the target to depends_on
    std::vector<Scalar> target;
    target.reserve(depends_.size());
    bool zero = true;
    for (int v : depends_) {
        const Scalar& s = c[static_cast<std::size_t>(v - 1)];
        target.push_back(s);
        if (!s.is_zero()) zero = false;
    }
    if (zero) return Scalar(0);
    if (rules_.empty()) return std::nullopt;

    std::vector<std::vector<Scalar>> restricted;
    for (const auto& r : rules_) {
        std::vector<Scalar> d;
        for (int v : depends_) d.push_back(r.delta[static_cast<std::size_t>(v - 1)]);
        restricted.push_back(std::move(d));
    }

    constexpr int kBound = 6;
    std::size_t nr = rules_.size();
    std::vector<int> k(nr, -kBound);
    // small-multiplier enumeration; rule lists are tiny in practice
    while (true) {
        bool all_zero = std::all_of(k.begin(), k.end(), [](int x) { return x == 0; });
        if (!all_zero) {
            bool match = true;
            for (std::size_t j = 0; j < target.size() && match; ++j) {
                Scalar acc(0);
                for (std::size_t r = 0; r < nr; ++r)
                    acc = acc + Scalar(k[r]) * restricted[r][j];
                if (!(acc == target[j])) match = false;
            }
            if (match) {
                Scalar s(0);
                for (std::size_t r = 0; r < nr; ++r) s = s + Scalar(k[r]) * rules_[r].adds;
                return s;
            }
        }
        std::size_t pos = 0;
        while (pos < nr && k[pos] == kBound) k[pos++] = -kBound;
        if (pos == nr) break;
        ++k[pos];
    }
    return std::nullopt;
}

SymbolRegistry::SymbolRegistry(int m) : m_(m) {
    if (m < 1) throw Error("ambient dimension must be >= 1");
}

namespace {
bool reserved_name(const std::string& name) {
    if (name == "pi" || name == "i" || name == "sin" || name == "cos" || name == "exp")
        return true;
    if (name.size() >= 2 && name[0] == 'z' &&
        std::all_of(name.begin() + 1, name.end(), [](char c) { return c >= '0' && c <= '9'; }))
        return true;
    return false;
}
}  // namespace

SymbolPtr SymbolRegistry::declare(const std::string& name, std::set<int> depends,
                                  std::vector<ShiftRule> rules) {
    if (find(name)) throw Error("duplicate symbol '" + name + "'");
    if (name.empty() || reserved_name(name))
        throw Error("symbol name '" + name + "' is reserved or empty");
    auto sym = std::make_shared<OpaqueSymbol>(name, size(), m_, std::move(depends),
                                              std::move(rules));
    syms_.push_back(sym);
    return sym;
}

SymbolPtr SymbolRegistry::find(const std::string& name) const {
    for (const auto& s : syms_)
        if (s->name() == name) return s;
    return nullptr;
}

}  // namespace fpdde
