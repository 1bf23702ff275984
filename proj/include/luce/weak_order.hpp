#pragma once

#include "luce/universe.hpp"

#include <string>
#include <vector>

namespace luce {

/// Complete, transitive preference stored as dense rank levels (0 = best).
class WeakOrder {
public:
    /// `ranks[i]` is the level of alternative i; any integers are accepted and
    /// compressed to 0..k-1 preserving order.
    WeakOrder(Universe universe, std::vector<int> ranks);

    /// Ordered partition, best class first; must cover the universe exactly once.
    static WeakOrder from_classes(Universe universe, const std::vector<std::vector<std::string>>& classes);
    /// Everything indifferent.
    static WeakOrder trivial(Universe universe);
    /// Strict order, best first.
    static WeakOrder from_ranking(Universe universe, const std::vector<Alternative>& best_first);

    const Universe& universe() const noexcept { return universe_; }
    int rank(Alternative a) const { return ranks_.at(a.index); }
    const std::vector<int>& ranks() const noexcept { return ranks_; }
    std::size_t class_count() const noexcept { return class_count_; }

    /// a is strictly preferred to b.
    bool prefers(Alternative a, Alternative b) const { return rank(a) < rank(b); }
    bool indifferent(Alternative a, Alternative b) const { return rank(a) == rank(b); }
    bool at_least(Alternative a, Alternative b) const { return rank(a) <= rank(b); }

    /// Indifference classes, best first, members in label order.
    std::vector<ChoiceSet> classes() const;

    friend bool operator==(const WeakOrder&, const WeakOrder&) = default;

private:
    Universe universe_;
    std::vector<int> ranks_;
    std::size_t class_count_ = 0;
};

} // namespace luce
