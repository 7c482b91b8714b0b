#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace botdna {

// Parses either the classic v1.1 timestamp ("Wed Oct 10 20:19:24 +0000 2018")
// or ISO 8601 ("2018-10-10T20:19:24Z", offsets allowed). Returns UTC epoch
// seconds. Throws ParseError on anything else.
std::int64_t parse_timestamp(std::string_view text);

std::string format_iso8601(std::int64_t epoch_seconds);

}  // namespace botdna
