#include <sstream>

#include "fedsurvey/federation.hpp"

namespace fedsurvey {

FederationMessage InProcessTransport::deliver(const FederationMessage& msg,
                                              const std::string& sender,
                                              std::uint32_t round) {
    const auto frame = encode_message(msg);
    log_.entries.push_back({round, message_type_name(msg), sender, frame.size()});
    if (on_frame) on_frame(frame);
    return decode_message(frame);
}

std::string RoundLog::to_csv() const {
    std::ostringstream out;
    out << "round,message_type,sender,bytes\n";
    for (const auto& e : entries)
        out << e.round << "," << e.message_type << "," << e.sender << "," << e.bytes << "\n";
    return out.str();
}

}  // namespace fedsurvey
