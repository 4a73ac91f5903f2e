#include "dicola/sepset.hpp"

#include <algorithm>

#include "dicola/errors.hpp"

namespace dicola {

SepsetMap::Key SepsetMap::key(std::string_view a, std::string_view b) {
    if (b < a) std::swap(a, b);
    return {std::string(a), std::string(b)};
}

void SepsetMap::set(std::string_view a, std::string_view b, std::vector<std::string> s) {
    if (a == b) throw InputError("sepset endpoints must differ");
    for (const auto& v : s)
        if (v == a || v == b) throw InputError("sepset for (" + std::string(a) + ", " + std::string(b) + ") contains an endpoint");
    map_[key(a, b)] = std::move(s);
}

const std::vector<std::string>* SepsetMap::find(std::string_view a, std::string_view b) const {
    auto it = map_.find(key(a, b));
    return it == map_.end() ? nullptr : &it->second;
}

bool sepsets_cover(const LocalResult& r) {
    const auto& s = r.skeleton;
    std::size_t missing = 0;
    for (int i = 0; i < s.size(); ++i)
        for (int j = i + 1; j < s.size(); ++j) {
            const bool has = r.sepsets.contains(s.name(i), s.name(j));
            if (s.adjacent(i, j) == has) return false;
            if (!has) ++missing;
        }
    const auto pairs = static_cast<std::size_t>(s.size()) * static_cast<std::size_t>(std::max(s.size() - 1, 0)) / 2;
    return r.sepsets.size() == pairs - missing;
}

}  // namespace dicola
