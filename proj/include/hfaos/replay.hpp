#pragma once

#include <cstddef>
#include <vector>

#include "hfaos/core.hpp"
#include "hfaos/errors.hpp"
#include "hfaos/rng.hpp"

namespace hfaos {

/// Fixed-capacity ring of transitions with FIFO overwrite.
class ReplayBuffer {
public:
    explicit ReplayBuffer(std::size_t capacity = 20000) : capacity_(capacity) {
        if (capacity == 0) throw ConfigError("replay capacity must be positive");
        ring_.reserve(capacity);
    }

    std::size_t capacity() const { return capacity_; }
    std::size_t size() const { return ring_.size(); }

    void push(Transition t) {
        if (t.r < 0.0) throw ConfigError("transition reward must be non-negative");
        if (ring_.size() < capacity_) {
            ring_.push_back(std::move(t));
        } else {
            ring_[cursor_] = std::move(t);
            cursor_ = (cursor_ + 1) % capacity_;
        }
    }

    /// i-th oldest stored transition, 0 = oldest.
    const Transition& at(std::size_t i) const {
        if (i >= ring_.size()) throw ConfigError("replay index out of range");
        if (ring_.size() < capacity_) return ring_[i];
        return ring_[(cursor_ + i) % capacity_];
    }

    /// Uniform sample with replacement.
    std::vector<const Transition*> sample(std::size_t batch, RngStream& rng) const {
        if (ring_.empty()) throw ConfigError("cannot sample from empty replay buffer");
        std::vector<const Transition*> out;
        out.reserve(batch);
        for (std::size_t i = 0; i < batch; ++i)
            out.push_back(&ring_[rng.next_below(ring_.size())]);
        return out;
    }

private:
    std::size_t capacity_;
    std::size_t cursor_ = 0; // next overwrite position once full
    std::vector<Transition> ring_;
};

} // namespace hfaos
