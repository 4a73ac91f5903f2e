#ifndef DICOLA_SEPSET_HPP
#define DICOLA_SEPSET_HPP

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dicola/graph.hpp"

namespace dicola {

/// One separating set per unordered pair of names.
class SepsetMap {
public:
    using Key = std::pair<std::string, std::string>;

    static Key key(std::string_view a, std::string_view b);

    /// Throws InputError when the set contains an endpoint or a == b.
    void set(std::string_view a, std::string_view b, std::vector<std::string> s);
    void erase(std::string_view a, std::string_view b) { map_.erase(key(a, b)); }
    const std::vector<std::string>* find(std::string_view a, std::string_view b) const;
    bool contains(std::string_view a, std::string_view b) const { return find(a, b) != nullptr; }
    std::size_t size() const { return map_.size(); }
    const std::map<Key, std::vector<std::string>>& entries() const { return map_; }

    bool operator==(const SepsetMap&) const = default;

private:
    std::map<Key, std::vector<std::string>> map_;
};

/// Skeleton plus separating sets for its non-adjacent pairs.
struct LocalResult {
    UndirectedGraph skeleton;
    SepsetMap sepsets;
    std::uint64_t tests_used = 0;
};

/// Checks that `r.sepsets` has an entry for exactly the non-adjacent pairs.
bool sepsets_cover(const LocalResult& r);

}  // namespace dicola

#endif  // DICOLA_SEPSET_HPP
