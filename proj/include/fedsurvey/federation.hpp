#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <variant>
#include <vector>

#include "fedsurvey/models.hpp"

namespace fedsurvey {

// ---- protocol messages -----------------------------------------------------
// Every variant carries only model parameters, aggregate counts, or per-feature
// ranges; none can encode a raw data row. Wire layout: docs/wire_format.md.

struct LinearParams {
    std::string client_id;
    std::uint32_t n = 0;  // local training sample count (aggregation weight)
    double intercept = 0.0;
    std::vector<double> coefficients;
};

struct ForestContribution {
    std::string client_id;
    Forest forest;
};

struct HistogramEntry {
    std::uint32_t feature = 0;
    std::uint32_t threshold_index = 0;
    double left_pos = 0.0;
    double left_neg = 0.0;
    double right_pos = 0.0;
    double right_neg = 0.0;
};

struct HistogramReport {
    std::string client_id;
    std::uint32_t tree_id = 0;
    std::uint32_t node_id = 0;
    std::vector<HistogramEntry> entries;
};

struct SplitDecision {
    std::uint32_t tree_id = 0;
    std::uint32_t node_id = 0;
    std::uint32_t feature = 0;
    double threshold = 0.0;
};

struct MakeLeaf {
    std::uint32_t tree_id = 0;
    std::uint32_t node_id = 0;
    double pos_count = 0.0;
    double neg_count = 0.0;
};

struct RangeReport {
    std::string client_id;
    std::vector<double> feature_min;
    std::vector<double> feature_max;
    double pos_count = 0.0;  // local class totals (aggregates, not rows)
    double neg_count = 0.0;
};

struct ThresholdGrid {
    std::uint32_t per_feature = 0;  // Q
    std::vector<std::vector<double>> thresholds;  // [feature][q], q ascending
};

struct GlobalModelMsg {
    bool is_linear = true;
    LinearModel linear;
    Forest forest;
};

struct Done {};

using FederationMessage =
    std::variant<LinearParams, ForestContribution, HistogramReport, SplitDecision,
                 MakeLeaf, RangeReport, ThresholdGrid, GlobalModelMsg, Done>;

std::vector<std::uint8_t> encode_message(const FederationMessage& msg);
FederationMessage decode_message(const std::vector<std::uint8_t>& frame);
std::string message_type_name(const FederationMessage& msg);

// ---- transport -------------------------------------------------------------

struct RoundLogEntry {
    std::uint32_t round = 0;
    std::string message_type;
    std::string sender;
    std::size_t bytes = 0;  // full frame size incl. length prefix
};

struct RoundLog {
    std::vector<RoundLogEntry> entries;
    std::string to_csv() const;
};

// Ordered, reliable in-process channel. Every message is pushed through the
// wire codec even in-process so the byte accounting in RoundLog is truthful.
class InProcessTransport {
public:
    FederationMessage deliver(const FederationMessage& msg, const std::string& sender,
                              std::uint32_t round);

    const RoundLog& log() const { return log_; }

    // Test hook: observes every encoded frame.
    std::function<void(const std::vector<std::uint8_t>&)> on_frame;

private:
    RoundLog log_;
};

// ---- clients & configuration ----------------------------------------------

// A client's local training split. Raw rows live here and are never
// serialized; only FederationMessage instances reach the transport.
struct ClientData {
    std::string client_id;
    std::vector<double> x;  // row-major n x m
    std::vector<double> y;
    std::size_t n = 0;
    std::size_t m = 0;
};

enum class FedAlgorithm { kLinear, kRfRegression, kRfClassification };

struct FedConfig {
    FedAlgorithm algorithm = FedAlgorithm::kLinear;
    std::size_t trees_per_client = 20;
    std::size_t thresholds_per_feature = 32;  // Q
    TrainConfig model;
    std::uint64_t seed = 0;
};

// ---- protocols (one aggregator, K clients) --------------------------------

// One round: local OLS per client, sample-size-weighted parameter average.
LinearModel run_federated_linear(const std::vector<ClientData>& clients,
                                 InProcessTransport& transport, double jitter);

// One round: local forests of trees_per_client trees, concatenated in
// client_id order into the global forest.
Forest run_federated_rf_regression(const std::vector<ClientData>& clients,
                                   const FedConfig& config,
                                   InProcessTransport& transport);

// Iterative histogram protocol: shared candidate-threshold grid, pooled
// class-count split selection, frontier-by-frontier tree growth.
Forest run_federated_rf_classification(const std::vector<ClientData>& clients,
                                       const FedConfig& config,
                                       InProcessTransport& transport);

// Centralized counterpart of the histogram protocol: grows the same trees from
// pooled data given the same grid and node-feature streams, without messages.
// Used for single-client equivalence and as the fair centralized baseline of
// the histogram model family.
Forest fit_forest_histogram(const std::vector<double>& x, const std::vector<double>& y,
                            std::size_t n, std::size_t m, const ThresholdGrid& grid,
                            const FedConfig& config);

// Candidate grid over pooled per-feature ranges: Q equally spaced points
// strictly inside [min, max].
ThresholdGrid build_threshold_grid(const std::vector<double>& feature_min,
                                   const std::vector<double>& feature_max,
                                   std::size_t per_feature);

// Node-level candidate feature subset; shared by clients, aggregator and the
// centralized counterpart so all parties agree without extra messages.
std::vector<std::size_t> node_feature_subset(std::uint64_t seed, std::uint32_t tree_id,
                                             std::uint32_t node_id, std::size_t m,
                                             std::size_t mtry);

}  // namespace fedsurvey
