#pragma once

#include <string>
#include <vector>

#include "synthsql/dbforge/schema.hpp"
#include "synthsql/gateway/gateway.hpp"

namespace synthsql {

// Designs a multi-table business schema around one flat source table.
// Retries up to `attempts` model calls; throws SchemaRejected with all
// validator messages when every attempt fails validation.
DatabaseSchema generate_database(const SourceTable& source, Gateway& gateway, int attempts = 3,
                                 std::vector<std::string>* call_ids = nullptr);

// Asks the model to add columns / refine foreign keys. Post-conditions:
// every input table survives by name, per-table column counts and the total
// FK edge count never decrease, and the result passes validate_schema.
// Throws EnhancementRejected with the offending diff.
DatabaseSchema enhance_database(const DatabaseSchema& schema, Gateway& gateway, int attempts = 3,
                                std::vector<std::string>* call_ids = nullptr);

nlohmann::json to_json(const SourceTable& source);

}  // namespace synthsql
