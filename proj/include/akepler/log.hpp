#pragma once

#include <functional>
#include <string>

namespace akepler {

using WarningSink = std::function<void(const std::string&)>;

// Non-fatal advisories (coarse step, sparse loop sampling, ...). The default
// sink writes to stderr. Returns the previous sink.
WarningSink set_warning_sink(WarningSink sink);
void warn(const std::string& message);

}  // namespace akepler
