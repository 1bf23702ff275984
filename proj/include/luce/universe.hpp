#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace luce {

/// Index of an alternative inside its Universe. Universes keep their labels
/// sorted, so index order is lexicographic label order.
struct Alternative {
    std::uint32_t index = 0;

    friend auto operator<=>(Alternative, Alternative) = default;
};

/// Largest universe for which subset enumeration is attempted.
inline constexpr std::size_t kMaxEnumerableUniverse = 16;

class ChoiceSet;

/// A finite, nonempty set of uniquely labelled alternatives.
class Universe {
public:
    explicit Universe(std::vector<std::string> labels);

    std::size_t size() const noexcept { return labels_.size(); }
    const std::vector<std::string>& labels() const noexcept { return labels_; }
    const std::string& label(Alternative a) const;

    std::optional<Alternative> find(std::string_view label) const;
    /// Throws InvalidArgument for unknown labels.
    Alternative at(std::string_view label) const;

    std::vector<Alternative> alternatives() const;

    ChoiceSet set(std::initializer_list<std::string_view> labels) const;
    ChoiceSet set(const std::vector<std::string>& labels) const;
    ChoiceSet full() const;

    /// Renders a set as "{a,b,c}".
    std::string format(const ChoiceSet& s) const;

    friend bool operator==(const Universe&, const Universe&) = default;

private:
    std::vector<std::string> labels_;
};

/// Nonempty set of alternatives, stored sorted and without duplicates.
class ChoiceSet {
public:
    ChoiceSet(std::vector<Alternative> members);
    ChoiceSet(std::initializer_list<Alternative> members)
        : ChoiceSet(std::vector<Alternative>(members)) {}

    /// Builds the set whose members are the set bits of `mask`; throws on 0.
    static ChoiceSet from_mask(std::uint64_t mask);

    const std::vector<Alternative>& members() const noexcept { return members_; }
    std::size_t size() const noexcept { return members_.size(); }
    auto begin() const noexcept { return members_.begin(); }
    auto end() const noexcept { return members_.end(); }

    bool contains(Alternative a) const;
    /// Position of `a` among the sorted members.
    std::optional<std::size_t> position(Alternative a) const;
    bool is_subset_of(const ChoiceSet& other) const;
    /// Intersection; empty result yields nullopt.
    std::optional<ChoiceSet> intersect(const ChoiceSet& other) const;
    /// Bit mask of members; only valid while every index is below 64.
    std::uint64_t mask() const;

    friend bool operator==(const ChoiceSet&, const ChoiceSet&) = default;
    /// Canonical order: smaller sets first, then lexicographic on members.
    friend std::strong_ordering operator<=>(const ChoiceSet& lhs, const ChoiceSet& rhs);

private:
    std::vector<Alternative> members_;
};

enum class Completeness { all_subsets, partial };

/// A duplicate-free collection of choice sets in canonical order.
class ChoiceFamily {
public:
    ChoiceFamily(const Universe& universe, std::vector<ChoiceSet> sets);

    /// Every nonempty subset; refuses universes above kMaxEnumerableUniverse.
    static ChoiceFamily all_subsets(const Universe& universe);
    /// Every two-element set plus the full universe.
    static ChoiceFamily pairs(const Universe& universe);

    const std::vector<ChoiceSet>& sets() const noexcept { return sets_; }
    std::size_t size() const noexcept { return sets_.size(); }
    const ChoiceSet& operator[](std::size_t i) const { return sets_[i]; }
    auto begin() const noexcept { return sets_.begin(); }
    auto end() const noexcept { return sets_.end(); }

    Completeness completeness() const noexcept { return completeness_; }
    std::size_t universe_size() const noexcept { return universe_size_; }

    std::optional<std::size_t> index_of(const ChoiceSet& s) const;
    bool contains(const ChoiceSet& s) const { return index_of(s).has_value(); }
    /// True when every two-element subset of the universe is present.
    bool has_all_pairs() const;

    friend bool operator==(const ChoiceFamily&, const ChoiceFamily&) = default;

private:
    std::vector<ChoiceSet> sets_;
    Completeness completeness_ = Completeness::partial;
    std::size_t universe_size_ = 0;
};

const char* to_string(Completeness c);

} // namespace luce
