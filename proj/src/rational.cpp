#include "fpdde/rational.hpp"

#include <functional>

namespace fpdde {

std::string rat_str(const mpq_class& q) {
    return q.get_str();
}

std::string GaussRat::str() const {
    if (is_zero()) return "0";
    std::string out;
    if (re != 0) out = rat_str(re);
    if (im != 0) {
        std::string part;
        if (im == 1) part = "i";
        else if (im == -1) part = "-i";
        else part = rat_str(im) + "*i";
        if (out.empty()) out = part;
        else if (!part.empty() && part[0] == '-') out += " - " + part.substr(1);
        else out += " + " + part;
    }
    return out;
}

std::size_t GaussRat::hash() const {
    std::size_t h = std::hash<std::string>{}(re.get_str());
    std::size_t g = std::hash<std::string>{}(im.get_str());
    return h ^ (g + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

}  // namespace fpdde
