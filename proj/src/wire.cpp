#include <cstring>

#include "fedsurvey/errors.hpp"
#include "fedsurvey/federation.hpp"

// Binary wire codec for FederationMessage. Little-endian, length-prefixed
// frames; layout documented in docs/wire_format.md. Version byte 1.

namespace fedsurvey {

namespace {

constexpr std::uint8_t kWireVersion = 1;

enum Tag : std::uint8_t {
    kTagLinearParams = 1,
    kTagForestContribution = 2,
    kTagHistogramReport = 3,
    kTagSplitDecision = 4,
    kTagMakeLeaf = 5,
    kTagRangeReport = 6,
    kTagThresholdGrid = 7,
    kTagGlobalModel = 8,
    kTagDone = 9,
};

class Writer {
public:
    void u8(std::uint8_t v) { buf_.push_back(v); }

    void u16(std::uint16_t v) {
        for (int i = 0; i < 2; ++i) buf_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
    }

    void u32(std::uint32_t v) {
        for (int i = 0; i < 4; ++i) buf_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
    }

    void u64(std::uint64_t v) {
        for (int i = 0; i < 8; ++i) buf_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
    }

    void i32(std::int32_t v) { u32(static_cast<std::uint32_t>(v)); }

    void f64(double v) {
        std::uint64_t bits;
        std::memcpy(&bits, &v, sizeof(bits));
        u64(bits);
    }

    void str(const std::string& s) {
        if (s.size() > 0xffff) throw SerializationError("wire: string too long");
        u16(static_cast<std::uint16_t>(s.size()));
        buf_.insert(buf_.end(), s.begin(), s.end());
    }

    std::vector<std::uint8_t> finish() {
        // Prepend the 4-byte length of the payload.
        std::vector<std::uint8_t> frame;
        const std::uint32_t len = static_cast<std::uint32_t>(buf_.size());
        for (int i = 0; i < 4; ++i) frame.push_back(static_cast<std::uint8_t>(len >> (8 * i)));
        frame.insert(frame.end(), buf_.begin(), buf_.end());
        return frame;
    }

private:
    std::vector<std::uint8_t> buf_;
};

class Reader {
public:
    explicit Reader(const std::vector<std::uint8_t>& frame) : data_(frame) {
        if (frame.size() < 4) throw SerializationError("wire: truncated frame");
        std::uint32_t len = 0;
        for (int i = 0; i < 4; ++i) len |= static_cast<std::uint32_t>(frame[i]) << (8 * i);
        if (frame.size() != len + 4) throw SerializationError("wire: frame length mismatch");
        pos_ = 4;
    }

    std::uint8_t u8() {
        need(1);
        return data_[pos_++];
    }

    std::uint16_t u16() {
        need(2);
        std::uint16_t v = 0;
        for (int i = 0; i < 2; ++i) v |= static_cast<std::uint16_t>(data_[pos_++]) << (8 * i);
        return v;
    }

    std::uint32_t u32() {
        need(4);
        std::uint32_t v = 0;
        for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(data_[pos_++]) << (8 * i);
        return v;
    }

    std::uint64_t u64() {
        need(8);
        std::uint64_t v = 0;
        for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(data_[pos_++]) << (8 * i);
        return v;
    }

    std::int32_t i32() { return static_cast<std::int32_t>(u32()); }

    double f64() {
        const std::uint64_t bits = u64();
        double v;
        std::memcpy(&v, &bits, sizeof(v));
        return v;
    }

    std::string str() {
        const std::uint16_t len = u16();
        need(len);
        std::string s(data_.begin() + static_cast<std::ptrdiff_t>(pos_),
                      data_.begin() + static_cast<std::ptrdiff_t>(pos_ + len));
        pos_ += len;
        return s;
    }

    void done() const {
        if (pos_ != data_.size()) throw SerializationError("wire: trailing bytes");
    }

private:
    void need(std::size_t k) const {
        if (pos_ + k > data_.size()) throw SerializationError("wire: truncated payload");
    }

    const std::vector<std::uint8_t>& data_;
    std::size_t pos_ = 0;
};

void write_forest(Writer& w, const Forest& forest) {
    w.u8(forest.task == TaskKind::kRegression ? 0 : 1);
    w.u32(static_cast<std::uint32_t>(forest.trees.size()));
    for (std::size_t t = 0; t < forest.trees.size(); ++t) {
        w.u64(t < forest.tree_seeds.size() ? forest.tree_seeds[t] : 0);
        w.u32(static_cast<std::uint32_t>(forest.trees[t].nodes.size()));
        for (const TreeNode& node : forest.trees[t].nodes) {
            w.i32(node.feature);
            w.f64(node.threshold);
            w.i32(node.left);
            w.i32(node.right);
            w.f64(node.value);
            w.f64(node.pos_count);
            w.f64(node.neg_count);
        }
    }
}

Forest read_forest(Reader& r) {
    Forest forest;
    forest.task = r.u8() == 0 ? TaskKind::kRegression : TaskKind::kClassification;
    const std::uint32_t n_trees = r.u32();
    for (std::uint32_t t = 0; t < n_trees; ++t) {
        forest.tree_seeds.push_back(r.u64());
        Tree tree;
        tree.nodes.resize(r.u32());
        for (TreeNode& node : tree.nodes) {
            node.feature = r.i32();
            node.threshold = r.f64();
            node.left = r.i32();
            node.right = r.i32();
            node.value = r.f64();
            node.pos_count = r.f64();
            node.neg_count = r.f64();
        }
        forest.trees.push_back(std::move(tree));
    }
    return forest;
}

}  // namespace

std::vector<std::uint8_t> encode_message(const FederationMessage& msg) {
    Writer w;
    w.u8(kWireVersion);
    std::visit(
        [&](const auto& m) {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, LinearParams>) {
                w.u8(kTagLinearParams);
                w.str(m.client_id);
                w.u32(m.n);
                w.f64(m.intercept);
                w.u32(static_cast<std::uint32_t>(m.coefficients.size()));
                for (double c : m.coefficients) w.f64(c);
            } else if constexpr (std::is_same_v<T, ForestContribution>) {
                w.u8(kTagForestContribution);
                w.str(m.client_id);
                write_forest(w, m.forest);
            } else if constexpr (std::is_same_v<T, HistogramReport>) {
                w.u8(kTagHistogramReport);
                w.str(m.client_id);
                w.u32(m.tree_id);
                w.u32(m.node_id);
                w.u32(static_cast<std::uint32_t>(m.entries.size()));
                for (const HistogramEntry& e : m.entries) {
                    w.u32(e.feature);
                    w.u32(e.threshold_index);
                    w.f64(e.left_pos);
                    w.f64(e.left_neg);
                    w.f64(e.right_pos);
                    w.f64(e.right_neg);
                }
            } else if constexpr (std::is_same_v<T, SplitDecision>) {
                w.u8(kTagSplitDecision);
                w.u32(m.tree_id);
                w.u32(m.node_id);
                w.u32(m.feature);
                w.f64(m.threshold);
            } else if constexpr (std::is_same_v<T, MakeLeaf>) {
                w.u8(kTagMakeLeaf);
                w.u32(m.tree_id);
                w.u32(m.node_id);
                w.f64(m.pos_count);
                w.f64(m.neg_count);
            } else if constexpr (std::is_same_v<T, RangeReport>) {
                w.u8(kTagRangeReport);
                w.str(m.client_id);
                if (m.feature_min.size() != m.feature_max.size())
                    throw SerializationError("wire: RangeReport min/max size mismatch");
                w.u32(static_cast<std::uint32_t>(m.feature_min.size()));
                for (std::size_t j = 0; j < m.feature_min.size(); ++j) {
                    w.f64(m.feature_min[j]);
                    w.f64(m.feature_max[j]);
                }
                w.f64(m.pos_count);
                w.f64(m.neg_count);
            } else if constexpr (std::is_same_v<T, ThresholdGrid>) {
                w.u8(kTagThresholdGrid);
                w.u32(static_cast<std::uint32_t>(m.thresholds.size()));
                w.u32(m.per_feature);
                for (const auto& per_feature : m.thresholds) {
                    if (per_feature.size() != m.per_feature)
                        throw SerializationError("wire: ThresholdGrid ragged rows");
                    for (double t : per_feature) w.f64(t);
                }
            } else if constexpr (std::is_same_v<T, GlobalModelMsg>) {
                w.u8(kTagGlobalModel);
                w.u8(m.is_linear ? 0 : 1);
                if (m.is_linear) {
                    w.u8(m.linear.ridged ? 1 : 0);
                    w.f64(m.linear.intercept);
                    w.u32(static_cast<std::uint32_t>(m.linear.coefficients.size()));
                    for (double c : m.linear.coefficients) w.f64(c);
                } else {
                    write_forest(w, m.forest);
                }
            } else if constexpr (std::is_same_v<T, Done>) {
                w.u8(kTagDone);
            }
        },
        msg);
    return w.finish();
}

FederationMessage decode_message(const std::vector<std::uint8_t>& frame) {
    Reader r(frame);
    const std::uint8_t version = r.u8();
    if (version != kWireVersion)
        throw SerializationError("wire: unsupported version " + std::to_string(version));
    const std::uint8_t tag = r.u8();
    FederationMessage msg;
    switch (tag) {
        case kTagLinearParams: {
            LinearParams m;
            m.client_id = r.str();
            m.n = r.u32();
            m.intercept = r.f64();
            m.coefficients.resize(r.u32());
            for (double& c : m.coefficients) c = r.f64();
            msg = std::move(m);
            break;
        }
        case kTagForestContribution: {
            ForestContribution m;
            m.client_id = r.str();
            m.forest = read_forest(r);
            msg = std::move(m);
            break;
        }
        case kTagHistogramReport: {
            HistogramReport m;
            m.client_id = r.str();
            m.tree_id = r.u32();
            m.node_id = r.u32();
            m.entries.resize(r.u32());
            for (HistogramEntry& e : m.entries) {
                e.feature = r.u32();
                e.threshold_index = r.u32();
                e.left_pos = r.f64();
                e.left_neg = r.f64();
                e.right_pos = r.f64();
                e.right_neg = r.f64();
            }
            msg = std::move(m);
            break;
        }
        case kTagSplitDecision: {
            SplitDecision m;
            m.tree_id = r.u32();
            m.node_id = r.u32();
            m.feature = r.u32();
            m.threshold = r.f64();
            msg = m;
            break;
        }
        case kTagMakeLeaf: {
            MakeLeaf m;
            m.tree_id = r.u32();
            m.node_id = r.u32();
            m.pos_count = r.f64();
            m.neg_count = r.f64();
            msg = m;
            break;
        }
        case kTagRangeReport: {
            RangeReport m;
            m.client_id = r.str();
            const std::uint32_t n_features = r.u32();
            m.feature_min.resize(n_features);
            m.feature_max.resize(n_features);
            for (std::uint32_t j = 0; j < n_features; ++j) {
                m.feature_min[j] = r.f64();
                m.feature_max[j] = r.f64();
            }
            m.pos_count = r.f64();
            m.neg_count = r.f64();
            msg = std::move(m);
            break;
        }
        case kTagThresholdGrid: {
            ThresholdGrid m;
            const std::uint32_t n_features = r.u32();
            m.per_feature = r.u32();
            m.thresholds.assign(n_features, std::vector<double>(m.per_feature));
            for (auto& per_feature : m.thresholds)
                for (double& t : per_feature) t = r.f64();
            msg = std::move(m);
            break;
        }
        case kTagGlobalModel: {
            GlobalModelMsg m;
            m.is_linear = r.u8() == 0;
            if (m.is_linear) {
                m.linear.ridged = r.u8() != 0;
                m.linear.intercept = r.f64();
                m.linear.coefficients.resize(r.u32());
                for (double& c : m.linear.coefficients) c = r.f64();
            } else {
                m.forest = read_forest(r);
            }
            msg = std::move(m);
            break;
        }
        case kTagDone:
            msg = Done{};
            break;
        default:
            throw SerializationError("wire: unknown tag " + std::to_string(tag));
    }
    r.done();
    return msg;
}

std::string message_type_name(const FederationMessage& msg) {
    return std::visit(
        [](const auto& m) -> std::string {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, LinearParams>) return "LinearParams";
            else if constexpr (std::is_same_v<T, ForestContribution>) return "ForestContribution";
            else if constexpr (std::is_same_v<T, HistogramReport>) return "HistogramReport";
            else if constexpr (std::is_same_v<T, SplitDecision>) return "SplitDecision";
            else if constexpr (std::is_same_v<T, MakeLeaf>) return "MakeLeaf";
            else if constexpr (std::is_same_v<T, RangeReport>) return "RangeReport";
            else if constexpr (std::is_same_v<T, ThresholdGrid>) return "ThresholdGrid";
            else if constexpr (std::is_same_v<T, GlobalModelMsg>) return "GlobalModel";
            else return "Done";
        },
        msg);
}

}  // namespace fedsurvey
