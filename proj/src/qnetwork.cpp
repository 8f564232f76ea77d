#include "hfaos/qnetwork.hpp"

#include <cmath>
#include <fstream>

#include <json.hpp>

#include "hfaos/errors.hpp"

namespace hfaos {

using nlohmann::json;

QNetwork::QNetwork(std::vector<int> layer_dims, RngStream& rng)
    : dims_(std::move(layer_dims)) {
    if (dims_.size() < 2) throw ConfigError("network needs at least two layer dims");
    for (int d : dims_)
        if (d < 1) throw ConfigError("layer dims must be positive");

    layers_.resize(dims_.size() - 1);
    for (std::size_t l = 0; l < layers_.size(); ++l) {
        Layer& layer = layers_[l];
        layer.rows = dims_[l + 1];
        layer.cols = dims_[l];
        layer.weights.resize(static_cast<std::size_t>(layer.rows) * layer.cols);
        layer.bias.assign(static_cast<std::size_t>(layer.rows), 0.0);
        const double scale = std::sqrt(6.0 / static_cast<double>(layer.cols));
        for (double& w : layer.weights) w = rng.uniform(-scale, scale);
    }
}

void QNetwork::check_input(std::span<const double> input) const {
    if (static_cast<int>(input.size()) != input_dim())
        throw DimensionError("network input length " + std::to_string(input.size()) +
                             ", expected " + std::to_string(input_dim()));
}

std::vector<double> QNetwork::forward(std::span<const double> input) const {
    check_input(input);
    std::vector<double> act(input.begin(), input.end());
    std::vector<double> next;
    for (std::size_t l = 0; l < layers_.size(); ++l) {
        const Layer& layer = layers_[l];
        next.assign(static_cast<std::size_t>(layer.rows), 0.0);
        for (int r = 0; r < layer.rows; ++r) {
            const double* wrow = layer.weights.data() +
                                 static_cast<std::size_t>(r) * layer.cols;
            double z = layer.bias[static_cast<std::size_t>(r)];
            for (int c = 0; c < layer.cols; ++c)
                z += wrow[c] * act[static_cast<std::size_t>(c)];
            const bool hidden = l + 1 < layers_.size();
            next[static_cast<std::size_t>(r)] = hidden ? std::max(0.0, z) : z;
        }
        act.swap(next);
    }
    return act;
}

QNetwork::Gradients QNetwork::zero_gradients() const {
    Gradients g;
    g.weights.reserve(layers_.size());
    g.bias.reserve(layers_.size());
    for (const Layer& layer : layers_) {
        g.weights.emplace_back(layer.weights.size(), 0.0);
        g.bias.emplace_back(layer.bias.size(), 0.0);
    }
    return g;
}

double QNetwork::batch_loss(std::span<const Sample> batch) const {
    if (batch.empty()) throw ConfigError("empty training batch");
    double loss = 0.0;
    for (const Sample& s : batch) {
        const std::vector<double> q = forward(s.state);
        const double err = q[static_cast<std::size_t>(s.action)] - s.target;
        loss += err * err;
    }
    return loss / static_cast<double>(batch.size());
}

double QNetwork::batch_gradients(std::span<const Sample> batch,
                                 Gradients& grads) const {
    if (batch.empty()) throw ConfigError("empty training batch");
    const std::size_t n_layers = layers_.size();
    const double inv_batch = 1.0 / static_cast<double>(batch.size());

    // Per-sample caches of pre-activations z and activations a.
    std::vector<std::vector<double>> a(n_layers + 1);
    std::vector<std::vector<double>> z(n_layers);
    double loss = 0.0;

    for (const Sample& s : batch) {
        check_input(s.state);
        a[0].assign(s.state.begin(), s.state.end());
        for (std::size_t l = 0; l < n_layers; ++l) {
            const Layer& layer = layers_[l];
            z[l].assign(static_cast<std::size_t>(layer.rows), 0.0);
            a[l + 1].assign(static_cast<std::size_t>(layer.rows), 0.0);
            const bool hidden = l + 1 < n_layers;
            for (int r = 0; r < layer.rows; ++r) {
                const double* wrow = layer.weights.data() +
                                     static_cast<std::size_t>(r) * layer.cols;
                double zr = layer.bias[static_cast<std::size_t>(r)];
                for (int c = 0; c < layer.cols; ++c)
                    zr += wrow[c] * a[l][static_cast<std::size_t>(c)];
                z[l][static_cast<std::size_t>(r)] = zr;
                a[l + 1][static_cast<std::size_t>(r)] = hidden ? std::max(0.0, zr) : zr;
            }
        }

        const double err =
            a[n_layers][static_cast<std::size_t>(s.action)] - s.target;
        loss += err * err;

        // delta starts as dLoss/dOutput; only the taken action carries error.
        std::vector<double> delta(a[n_layers].size(), 0.0);
        delta[static_cast<std::size_t>(s.action)] = 2.0 * err * inv_batch;

        for (std::size_t l = n_layers; l-- > 0;) {
            const Layer& layer = layers_[l];
            auto& gw = grads.weights[l];
            auto& gb = grads.bias[l];
            for (int r = 0; r < layer.rows; ++r) {
                const double dr = delta[static_cast<std::size_t>(r)];
                if (dr == 0.0) continue;
                gb[static_cast<std::size_t>(r)] += dr;
                double* gwrow = gw.data() + static_cast<std::size_t>(r) * layer.cols;
                for (int c = 0; c < layer.cols; ++c)
                    gwrow[c] += dr * a[l][static_cast<std::size_t>(c)];
            }
            if (l == 0) break;
            std::vector<double> prev(static_cast<std::size_t>(layer.cols), 0.0);
            for (int r = 0; r < layer.rows; ++r) {
                const double dr = delta[static_cast<std::size_t>(r)];
                if (dr == 0.0) continue;
                const double* wrow = layer.weights.data() +
                                     static_cast<std::size_t>(r) * layer.cols;
                for (int c = 0; c < layer.cols; ++c)
                    prev[static_cast<std::size_t>(c)] += dr * wrow[c];
            }
            // rectifier derivative of the previous hidden layer
            for (int c = 0; c < layer.cols; ++c)
                if (z[l - 1][static_cast<std::size_t>(c)] <= 0.0)
                    prev[static_cast<std::size_t>(c)] = 0.0;
            delta.swap(prev);
        }
    }
    return loss * inv_batch;
}

void QNetwork::sgd_step(const Gradients& grads, double learning_rate) {
    for (std::size_t l = 0; l < layers_.size(); ++l) {
        Layer& layer = layers_[l];
        const auto& gw = grads.weights[l];
        const auto& gb = grads.bias[l];
        for (std::size_t i = 0; i < layer.weights.size(); ++i)
            layer.weights[i] -= learning_rate * gw[i];
        for (std::size_t i = 0; i < layer.bias.size(); ++i)
            layer.bias[i] -= learning_rate * gb[i];
    }
}

std::size_t QNetwork::parameter_count() const {
    std::size_t n = 0;
    for (const Layer& layer : layers_) n += layer.weights.size() + layer.bias.size();
    return n;
}

double QNetwork::get_parameter(std::size_t i) const {
    for (const Layer& layer : layers_) {
        if (i < layer.weights.size()) return layer.weights[i];
        i -= layer.weights.size();
        if (i < layer.bias.size()) return layer.bias[i];
        i -= layer.bias.size();
    }
    throw ConfigError("parameter index out of range");
}

void QNetwork::set_parameter(std::size_t i, double v) {
    for (Layer& layer : layers_) {
        if (i < layer.weights.size()) {
            layer.weights[i] = v;
            return;
        }
        i -= layer.weights.size();
        if (i < layer.bias.size()) {
            layer.bias[i] = v;
            return;
        }
        i -= layer.bias.size();
    }
    throw ConfigError("parameter index out of range");
}

void QNetwork::save(const std::string& path, const std::string& domain) const {
    json doc;
    doc["format_version"] = 1;
    doc["feature_dim"] = input_dim();
    doc["k_ops"] = output_dim();
    doc["domain"] = domain;
    json layers = json::array();
    for (const Layer& layer : layers_) {
        json jl;
        jl["rows"] = layer.rows;
        jl["cols"] = layer.cols;
        jl["weights"] = layer.weights;
        jl["bias"] = layer.bias;
        layers.push_back(std::move(jl));
    }
    doc["layers"] = std::move(layers);

    std::ofstream out(path);
    if (!out) throw IoError("cannot open model file for writing: " + path);
    out << doc.dump(2) << '\n';
    if (!out) throw IoError("failed writing model file: " + path);
}

QNetwork QNetwork::load(const std::string& path, std::string* domain) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open model file: " + path);
    json doc;
    try {
        in >> doc;
    } catch (const json::exception& e) {
        throw FormatError("model file is not valid JSON: " + std::string(e.what()));
    }

    try {
        if (doc.at("format_version").get<int>() != 1)
            throw FormatError("unsupported model format_version");
        QNetwork net;
        for (const json& jl : doc.at("layers")) {
            Layer layer;
            layer.rows = jl.at("rows").get<int>();
            layer.cols = jl.at("cols").get<int>();
            layer.weights = jl.at("weights").get<std::vector<double>>();
            layer.bias = jl.at("bias").get<std::vector<double>>();
            if (layer.rows < 1 || layer.cols < 1 ||
                layer.weights.size() !=
                    static_cast<std::size_t>(layer.rows) * layer.cols ||
                layer.bias.size() != static_cast<std::size_t>(layer.rows))
                throw FormatError("model layer shape mismatch");
            for (double w : layer.weights)
                if (!std::isfinite(w)) throw FormatError("non-finite model weight");
            for (double b : layer.bias)
                if (!std::isfinite(b)) throw FormatError("non-finite model bias");
            net.layers_.push_back(std::move(layer));
        }
        if (net.layers_.empty()) throw FormatError("model has no layers");
        net.dims_.push_back(net.layers_.front().cols);
        for (const Layer& layer : net.layers_) {
            if (layer.cols != net.dims_.back())
                throw FormatError("model layer dims do not chain");
            net.dims_.push_back(layer.rows);
        }
        if (net.input_dim() != doc.at("feature_dim").get<int>() ||
            net.output_dim() != doc.at("k_ops").get<int>())
            throw FormatError("model header dims disagree with layers");
        if (domain) *domain = doc.at("domain").get<std::string>();
        return net;
    } catch (const json::exception& e) {
        throw FormatError("model file missing fields: " + std::string(e.what()));
    }
}

} // namespace hfaos
