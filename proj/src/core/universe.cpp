#include "luce/universe.hpp"

#include "luce/errors.hpp"

#include <algorithm>
#include <bit>

namespace luce {

Universe::Universe(std::vector<std::string> labels) : labels_(std::move(labels))
{
    if (labels_.empty()) {
        throw InvalidArgument("universe must contain at least one alternative");
    }
    for (const auto& l : labels_) {
        if (l.empty()) {
            throw InvalidArgument("alternative labels must be nonempty");
        }
    }
    std::sort(labels_.begin(), labels_.end());
    if (auto dup = std::adjacent_find(labels_.begin(), labels_.end()); dup != labels_.end()) {
        throw InvalidArgument("duplicate alternative label '" + *dup + "'");
    }
    if (labels_.size() > UINT32_MAX) {
        throw InvalidArgument("universe too large");
    }
}

const std::string& Universe::label(Alternative a) const
{
    if (a.index >= labels_.size()) {
        throw InvalidArgument("alternative index out of range");
    }
    return labels_[a.index];
}

std::optional<Alternative> Universe::find(std::string_view label) const
{
    auto it = std::lower_bound(labels_.begin(), labels_.end(), label);
    if (it == labels_.end() || *it != label) {
        return std::nullopt;
    }
    return Alternative{static_cast<std::uint32_t>(it - labels_.begin())};
}

Alternative Universe::at(std::string_view label) const
{
    if (auto a = find(label)) {
        return *a;
    }
    throw InvalidArgument("unknown alternative '" + std::string(label) + "'");
}

std::vector<Alternative> Universe::alternatives() const
{
    std::vector<Alternative> out(labels_.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = Alternative{static_cast<std::uint32_t>(i)};
    }
    return out;
}

ChoiceSet Universe::set(std::initializer_list<std::string_view> labels) const
{
    std::vector<Alternative> members;
    for (auto l : labels) {
        members.push_back(at(l));
    }
    return ChoiceSet(std::move(members));
}

ChoiceSet Universe::set(const std::vector<std::string>& labels) const
{
    std::vector<Alternative> members;
    for (const auto& l : labels) {
        members.push_back(at(l));
    }
    return ChoiceSet(std::move(members));
}

ChoiceSet Universe::full() const { return ChoiceSet(alternatives()); }

std::string Universe::format(const ChoiceSet& s) const
{
    std::string out = "{";
    bool first = true;
    for (auto a : s) {
        if (!first) {
            out += ',';
        }
        out += label(a);
        first = false;
    }
    return out + "}";
}

ChoiceSet::ChoiceSet(std::vector<Alternative> members) : members_(std::move(members))
{
    if (members_.empty()) {
        throw InvalidArgument("choice sets must be nonempty");
    }
    std::sort(members_.begin(), members_.end());
    if (std::adjacent_find(members_.begin(), members_.end()) != members_.end()) {
        throw InvalidArgument("choice set contains a duplicate alternative");
    }
}

ChoiceSet ChoiceSet::from_mask(std::uint64_t mask)
{
    std::vector<Alternative> members;
    members.reserve(static_cast<std::size_t>(std::popcount(mask)));
    while (mask != 0) {
        auto bit = std::countr_zero(mask);
        members.push_back(Alternative{static_cast<std::uint32_t>(bit)});
        mask &= mask - 1;
    }
    return ChoiceSet(std::move(members));
}

bool ChoiceSet::contains(Alternative a) const
{
    return std::binary_search(members_.begin(), members_.end(), a);
}

std::optional<std::size_t> ChoiceSet::position(Alternative a) const
{
    auto it = std::lower_bound(members_.begin(), members_.end(), a);
    if (it == members_.end() || *it != a) {
        return std::nullopt;
    }
    return static_cast<std::size_t>(it - members_.begin());
}

bool ChoiceSet::is_subset_of(const ChoiceSet& other) const
{
    return std::includes(other.members_.begin(), other.members_.end(), members_.begin(), members_.end());
}

std::optional<ChoiceSet> ChoiceSet::intersect(const ChoiceSet& other) const
{
    std::vector<Alternative> out;
    std::set_intersection(members_.begin(), members_.end(), other.members_.begin(), other.members_.end(),
                          std::back_inserter(out));
    if (out.empty()) {
        return std::nullopt;
    }
    return ChoiceSet(std::move(out));
}

std::uint64_t ChoiceSet::mask() const
{
    std::uint64_t m = 0;
    for (auto a : members_) {
        if (a.index >= 64) {
            throw SizeLimitError("bit mask requested for an alternative index >= 64");
        }
        m |= std::uint64_t{1} << a.index;
    }
    return m;
}

std::strong_ordering operator<=>(const ChoiceSet& lhs, const ChoiceSet& rhs)
{
    if (auto c = lhs.size() <=> rhs.size(); c != 0) {
        return c;
    }
    return lhs.members_ <=> rhs.members_;
}

ChoiceFamily::ChoiceFamily(const Universe& universe, std::vector<ChoiceSet> sets)
    : sets_(std::move(sets)), universe_size_(universe.size())
{
    for (const auto& s : sets_) {
        if (s.members().back().index >= universe.size()) {
            throw InvalidArgument("choice set member outside the universe");
        }
    }
    std::sort(sets_.begin(), sets_.end());
    if (std::adjacent_find(sets_.begin(), sets_.end()) != sets_.end()) {
        throw InvalidArgument("choice family contains a duplicate set");
    }
    if (universe_size_ < 64 && sets_.size() == (std::uint64_t{1} << universe_size_) - 1) {
        completeness_ = Completeness::all_subsets;
    }
}

ChoiceFamily ChoiceFamily::all_subsets(const Universe& universe)
{
    const auto n = universe.size();
    if (n > kMaxEnumerableUniverse) {
        throw SizeLimitError("all-subsets family requested for " + std::to_string(n) +
                             " alternatives (limit " + std::to_string(kMaxEnumerableUniverse) + ")");
    }
    std::vector<ChoiceSet> sets;
    sets.reserve((std::size_t{1} << n) - 1);
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
        sets.push_back(ChoiceSet::from_mask(mask));
    }
    return ChoiceFamily(universe, std::move(sets));
}

ChoiceFamily ChoiceFamily::pairs(const Universe& universe)
{
    std::vector<ChoiceSet> sets;
    const auto n = static_cast<std::uint32_t>(universe.size());
    for (std::uint32_t i = 0; i < n; ++i) {
        for (std::uint32_t j = i + 1; j < n; ++j) {
            sets.push_back(ChoiceSet{Alternative{i}, Alternative{j}});
        }
    }
    if (n != 2) {
        sets.push_back(universe.full());
    }
    return ChoiceFamily(universe, std::move(sets));
}

std::optional<std::size_t> ChoiceFamily::index_of(const ChoiceSet& s) const
{
    auto it = std::lower_bound(sets_.begin(), sets_.end(), s);
    if (it == sets_.end() || *it != s) {
        return std::nullopt;
    }
    return static_cast<std::size_t>(it - sets_.begin());
}

bool ChoiceFamily::has_all_pairs() const
{
    std::size_t pairs = 0;
    for (const auto& s : sets_) {
        if (s.size() == 2) {
            ++pairs;
        }
    }
    return pairs == universe_size_ * (universe_size_ - 1) / 2;
}

const char* to_string(Completeness c)
{
    return c == Completeness::all_subsets ? "all-subsets" : "partial";
}

} // namespace luce
