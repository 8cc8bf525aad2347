#pragma once

#include "swnet/graph.hpp"

#include <functional>
#include <utility>
#include <vector>

namespace swnet {

// Round-synchronous message passing. In every round each node computes its
// next state from its own previous state and the previous states of its direct
// neighbors, which it can only reach through the Inbox. All nodes update
// simultaneously.
template <class State>
class SyncEngine {
public:
    using ReadObserver = std::function<void(NodeId reader, NodeId sender)>;

    class Inbox {
    public:
        template <class F>
        void for_each(F&& f) const
        {
            for (NodeId sender : engine_.adj_.neighbors(reader_)) {
                if (engine_.observer_)
                    engine_.observer_(reader_, sender);
                f(sender, engine_.previous_[sender]);
            }
        }

    private:
        friend class SyncEngine;
        Inbox(const SyncEngine& engine, NodeId reader) : engine_(engine), reader_(reader) {}
        const SyncEngine& engine_;
        NodeId reader_;
    };

    SyncEngine(const Adjacency& adj, std::vector<State> initial)
        : adj_(adj), previous_(std::move(initial))
    {
    }

    void set_read_observer(ReadObserver observer) { observer_ = std::move(observer); }

    // update(node, const State& own, const Inbox&) -> State. Returns true if any state changed.
    template <class Update>
    bool step(Update&& update)
    {
        std::vector<State> next;
        next.reserve(previous_.size());
        bool changed = false;
        for (NodeId v = 0; v < static_cast<NodeId>(previous_.size()); ++v) {
            next.push_back(update(v, previous_[v], Inbox(*this, v)));
            changed = changed || !(next.back() == previous_[v]);
        }
        previous_ = std::move(next);
        ++rounds_;
        return changed;
    }

    const std::vector<State>& states() const { return previous_; }
    std::vector<State>& mutable_states() { return previous_; }
    std::size_t rounds() const { return rounds_; }

private:
    const Adjacency& adj_;
    std::vector<State> previous_;
    ReadObserver observer_;
    std::size_t rounds_ = 0;
};

} // namespace swnet
