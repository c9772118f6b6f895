#pragma once

#include <memory>
#include <string>

#include "synthsql/gateway/gateway.hpp"

namespace synthsql {

// Fully deterministic offline provider. Responses come from a fixture
// directory when a file named <template>-<hex64(fnv1a(prompt))>.txt exists,
// otherwise from a rule-based synthesizer keyed by the labeled blocks the
// shipped prompt templates embed (SOURCE_TABLE / SCHEMA / COMBINATION / ...).
std::shared_ptr<Provider> make_mock_provider(const std::string& fixture_dir = "");

}  // namespace synthsql
