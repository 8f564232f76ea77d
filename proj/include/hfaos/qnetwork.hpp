#pragma once

#include <span>
#include <string>
#include <vector>

#include "hfaos/core.hpp"
#include "hfaos/rng.hpp"

namespace hfaos {

/// Fully connected value network: affine layers with rectifier activations
/// on hidden layers and an identity output. Hand-rolled forward and
/// backward passes, plain SGD. Small enough that everything is flat
/// double vectors.
class QNetwork {
public:
    struct Layer {
        int rows = 0, cols = 0;       // rows x cols, row-major
        std::vector<double> weights;  // rows * cols
        std::vector<double> bias;     // rows
    };

    struct Gradients {
        std::vector<std::vector<double>> weights;
        std::vector<std::vector<double>> bias;
    };

    /// One supervised target for the Q-value of a taken action.
    struct Sample {
        std::span<const double> state;
        int action = 0;
        double target = 0.0;
    };

    QNetwork() = default;

    /// layer_dims = [input, hidden..., output]; weights initialized
    /// uniform in +-sqrt(6 / fan_in), biases zero.
    QNetwork(std::vector<int> layer_dims, RngStream& rng);

    const std::vector<int>& layer_dims() const { return dims_; }
    int input_dim() const { return dims_.front(); }
    int output_dim() const { return dims_.back(); }
    const std::vector<Layer>& layers() const { return layers_; }

    /// Deterministic forward pass; throws DimensionError on a length mismatch.
    std::vector<double> forward(std::span<const double> input) const;

    Gradients zero_gradients() const;

    /// Mean squared error of Q(state)[action] against target over the batch.
    double batch_loss(std::span<const Sample> batch) const;

    /// Same loss, with parameter gradients accumulated into `grads`
    /// (which must come from zero_gradients()).
    double batch_gradients(std::span<const Sample> batch, Gradients& grads) const;

    void sgd_step(const Gradients& grads, double learning_rate);

    /// Flat parameter view (layer by layer, weights then bias) used by the
    /// finite-difference gradient check.
    std::size_t parameter_count() const;
    double get_parameter(std::size_t i) const;
    void set_parameter(std::size_t i, double v);

    /// JSON model file, format_version 1. Round-trips bit-exactly.
    void save(const std::string& path, const std::string& domain) const;
    static QNetwork load(const std::string& path, std::string* domain = nullptr);

private:
    void check_input(std::span<const double> input) const;

    std::vector<int> dims_;
    std::vector<Layer> layers_;
};

} // namespace hfaos
