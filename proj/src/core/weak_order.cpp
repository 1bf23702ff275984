#include "luce/weak_order.hpp"

#include "luce/errors.hpp"

#include <algorithm>

namespace luce {

WeakOrder::WeakOrder(Universe universe, std::vector<int> ranks)
    : universe_(std::move(universe)), ranks_(std::move(ranks))
{
    if (ranks_.size() != universe_.size()) {
        throw InvalidArgument("weak order needs exactly one rank per alternative");
    }
    std::vector<int> levels(ranks_);
    std::sort(levels.begin(), levels.end());
    levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
    for (auto& r : ranks_) {
        r = static_cast<int>(std::lower_bound(levels.begin(), levels.end(), r) - levels.begin());
    }
    class_count_ = levels.size();
}

WeakOrder WeakOrder::from_classes(Universe universe, const std::vector<std::vector<std::string>>& classes)
{
    std::vector<int> ranks(universe.size(), -1);
    for (std::size_t level = 0; level < classes.size(); ++level) {
        if (classes[level].empty()) {
            throw InvalidArgument("indifference classes must be nonempty");
        }
        for (const auto& label : classes[level]) {
            auto a = universe.at(label);
            if (ranks[a.index] != -1) {
                throw InvalidArgument("alternative '" + label + "' appears in two classes");
            }
            ranks[a.index] = static_cast<int>(level);
        }
    }
    if (std::find(ranks.begin(), ranks.end(), -1) != ranks.end()) {
        throw InvalidArgument("ordered partition does not cover the universe");
    }
    return WeakOrder(std::move(universe), std::move(ranks));
}

WeakOrder WeakOrder::trivial(Universe universe)
{
    std::vector<int> ranks(universe.size(), 0);
    return WeakOrder(std::move(universe), std::move(ranks));
}

WeakOrder WeakOrder::from_ranking(Universe universe, const std::vector<Alternative>& best_first)
{
    if (best_first.size() != universe.size()) {
        throw InvalidArgument("strict ranking must list every alternative once");
    }
    std::vector<int> ranks(universe.size(), -1);
    for (std::size_t pos = 0; pos < best_first.size(); ++pos) {
        auto idx = best_first[pos].index;
        if (idx >= ranks.size() || ranks[idx] != -1) {
            throw InvalidArgument("strict ranking must list every alternative once");
        }
        ranks[idx] = static_cast<int>(pos);
    }
    return WeakOrder(std::move(universe), std::move(ranks));
}

std::vector<ChoiceSet> WeakOrder::classes() const
{
    std::vector<std::vector<Alternative>> buckets(class_count_);
    for (std::size_t i = 0; i < ranks_.size(); ++i) {
        buckets[static_cast<std::size_t>(ranks_[i])].push_back(Alternative{static_cast<std::uint32_t>(i)});
    }
    std::vector<ChoiceSet> out;
    out.reserve(buckets.size());
    for (auto& b : buckets) {
        out.emplace_back(std::move(b));
    }
    return out;
}

} // namespace luce
