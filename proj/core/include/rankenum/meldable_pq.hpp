#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

namespace rankenum {

namespace pq_stats {
/// Crude complexity surrogate: bumped once per heap node allocated or walked.
/// Tests assert that push/find_max/meld stay O(1) and pop_max O(log n).
inline thread_local std::uint64_t node_visits = 0;

inline void reset() { node_visits = 0; }
inline std::uint64_t visits() { return node_visits; }
}  // namespace pq_stats

/// Purely functional max-priority queue with worst-case O(1) push, find_max
/// and meld, and O(log n) pop_max: a skew binomial heap of queues with the
/// maximum element kept at the root (Brodal/Okasaki bootstrapping). Every
/// operation returns a new queue and leaves its inputs valid; versions share
/// structure freely, so keeping old versions alive is cheap.
///
/// Priorities need operator<; ties are broken by internal structure.
template <typename Priority, typename Payload>
class PersistentMaxQueue {
    struct Boot;
    struct Tree;
    template <typename T>
    struct Cons;
    template <typename T>
    using List = std::shared_ptr<const Cons<T>>;
    using BootPtr = std::shared_ptr<const Boot>;
    using TreePtr = std::shared_ptr<const Tree>;

    template <typename T>
    struct Cons {
        T head;
        List<T> tail;
    };

    /// Skew binomial tree. `aux` holds elements absorbed by skew links; they
    /// never exceed the root. Children have ranks rank-1 .. 0, descending.
    struct Tree {
        int rank;
        BootPtr root;
        List<BootPtr> aux;
        List<TreePtr> children;
    };

    /// A non-empty queue: the maximum element plus a skew binomial heap of
    /// sub-queues keyed by their own maxima.
    struct Boot {
        Priority prio;
        Payload payload;
        List<TreePtr> heap;
    };

    template <typename T>
    static List<T> cons(T head, List<T> tail) {
        ++pq_stats::node_visits;
        return std::make_shared<const Cons<T>>(Cons<T>{std::move(head), std::move(tail)});
    }

    static TreePtr make_tree(int rank, BootPtr root, List<BootPtr> aux, List<TreePtr> children) {
        ++pq_stats::node_visits;
        return std::make_shared<const Tree>(Tree{rank, std::move(root), std::move(aux), std::move(children)});
    }

    static BootPtr make_boot(Priority prio, Payload payload, List<TreePtr> heap) {
        ++pq_stats::node_visits;
        return std::make_shared<const Boot>(Boot{std::move(prio), std::move(payload), std::move(heap)});
    }

    static bool less(const BootPtr& a, const BootPtr& b) { return a->prio < b->prio; }

    /// Links two equal-rank trees; the larger root wins.
    static TreePtr link(const TreePtr& a, const TreePtr& b) {
        ++pq_stats::node_visits;
        if (less(a->root, b->root)) return make_tree(b->rank + 1, b->root, b->aux, cons(a, b->children));
        return make_tree(a->rank + 1, a->root, a->aux, cons(b, a->children));
    }

    /// Links two equal-rank trees and absorbs one extra element, producing a
    /// rank+1 tree without growing the child list.
    static TreePtr skew_link(const BootPtr& x, const TreePtr& a, const TreePtr& b) {
        TreePtr t = link(a, b);
        if (less(t->root, x)) return make_tree(t->rank, x, cons(t->root, t->aux), t->children);
        return make_tree(t->rank, t->root, cons(x, t->aux), t->children);
    }

    /// Inserts a tree with rank <= the smallest rank in `list`, linking
    /// equal-rank collisions upward (binomial carry).
    static List<TreePtr> ins_tree(TreePtr t, List<TreePtr> list) {
        while (list && list->head->rank == t->rank) {
            ++pq_stats::node_visits;
            t = link(t, list->head);
            list = list->tail;
        }
        return cons(std::move(t), std::move(list));
    }

    /// O(1) element insert: skew-links the two smallest trees when their
    /// ranks collide, otherwise prepends a singleton tree.
    static List<TreePtr> skew_insert(const BootPtr& x, const List<TreePtr>& list) {
        if (list && list->tail && list->head->rank == list->tail->head->rank)
            return cons(skew_link(x, list->head, list->tail->head), list->tail->tail);
        return cons(make_tree(0, x, nullptr, nullptr), list);
    }

    /// Restores strictly increasing ranks (needed before a tree-list merge).
    static List<TreePtr> uniqify(const List<TreePtr>& list) {
        if (!list) return list;
        return ins_tree(list->head, list->tail);
    }

    static List<TreePtr> merge_uniq(List<TreePtr> a, List<TreePtr> b) {
        if (!a) return b;
        if (!b) return a;
        ++pq_stats::node_visits;
        if (a->head->rank < b->head->rank) return cons(a->head, merge_uniq(a->tail, b));
        if (b->head->rank < a->head->rank) return cons(b->head, merge_uniq(a, b->tail));
        return ins_tree(link(a->head, b->head), merge_uniq(a->tail, b->tail));
    }

    static List<TreePtr> meld_heaps(const List<TreePtr>& a, const List<TreePtr>& b) {
        return merge_uniq(uniqify(a), uniqify(b));
    }

    /// The tree whose root has maximal priority. Aux elements never exceed
    /// their root, so scanning roots is enough.
    static const TreePtr& find_max_tree(const List<TreePtr>& list) {
        const List<TreePtr>* best_cell = &list;
        for (const List<TreePtr>* cell = &list; *cell; cell = &(*cell)->tail) {
            ++pq_stats::node_visits;
            if (less((*best_cell)->head->root, (*cell)->head->root)) best_cell = cell;
        }
        return (*best_cell)->head;
    }

    static List<TreePtr> remove_tree(const List<TreePtr>& list, const TreePtr& target) {
        ++pq_stats::node_visits;
        if (list->head == target) return list->tail;
        return cons(list->head, remove_tree(list->tail, target));
    }

    /// Removes the maximal element of a non-empty tree list; returns it and
    /// the remaining heap.
    static std::pair<BootPtr, List<TreePtr>> delete_max(const List<TreePtr>& list) {
        TreePtr t = find_max_tree(list);
        List<TreePtr> rest = remove_tree(list, t);
        // Children carry descending ranks; reversed they form a uniqified heap.
        List<TreePtr> children_heap = nullptr;
        for (List<TreePtr> c = t->children; c; c = c->tail) children_heap = cons(c->head, children_heap);
        List<TreePtr> heap = merge_uniq(children_heap, uniqify(rest));
        for (List<BootPtr> a = t->aux; a; a = a->tail) heap = skew_insert(a->head, heap);
        return {t->root, heap};
    }

    PersistentMaxQueue(BootPtr root, std::size_t size) : root_(std::move(root)), size_(size) {}

  public:
    PersistentMaxQueue() = default;

    bool empty() const { return root_ == nullptr; }
    std::size_t size() const { return size_; }

    [[nodiscard]] PersistentMaxQueue push(Priority prio, Payload payload) const {
        return meld(PersistentMaxQueue(make_boot(std::move(prio), std::move(payload), nullptr), 1));
    }

    std::optional<std::pair<Priority, Payload>> find_max() const {
        if (!root_) return std::nullopt;
        return std::make_pair(root_->prio, root_->payload);
    }

    [[nodiscard]] PersistentMaxQueue meld(const PersistentMaxQueue& other) const {
        if (!root_) return other;
        if (!other.root_) return *this;
        std::size_t total = size_ + other.size_;
        if (less(root_, other.root_))
            return PersistentMaxQueue(
                make_boot(other.root_->prio, other.root_->payload, skew_insert(root_, other.root_->heap)),
                total);
        return PersistentMaxQueue(
            make_boot(root_->prio, root_->payload, skew_insert(other.root_, root_->heap)), total);
    }

    std::optional<std::pair<std::pair<Priority, Payload>, PersistentMaxQueue>> pop_max() const {
        if (!root_) return std::nullopt;
        std::pair<Priority, Payload> top(root_->prio, root_->payload);
        if (!root_->heap) return std::make_pair(std::move(top), PersistentMaxQueue());
        auto [next, rest] = delete_max(root_->heap);
        BootPtr new_root = make_boot(next->prio, next->payload, meld_heaps(next->heap, rest));
        return std::make_pair(std::move(top), PersistentMaxQueue(std::move(new_root), size_ - 1));
    }

    /// Non-destructive full drain in nonincreasing priority order.
    std::vector<std::pair<Priority, Payload>> drain() const {
        std::vector<std::pair<Priority, Payload>> out;
        out.reserve(size_);
        PersistentMaxQueue q = *this;
        while (auto popped = q.pop_max()) {
            out.push_back(popped->first);
            q = popped->second;
        }
        return out;
    }

  private:
    BootPtr root_;
    std::size_t size_ = 0;
};

}  // namespace rankenum
