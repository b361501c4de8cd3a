#pragma once

// JSON renderings of library results. Field order is fixed so output is
// byte-for-byte reproducible.

#include <string>

#include "json.hpp"

#include "acg/classify.hpp"
#include "acg/diophantine.hpp"
#include "acg/harness.hpp"
#include "acg/noncomm_graph.hpp"

namespace acg {

using ojson = nlohmann::ordered_json;

ojson json_of(const GraphSignature& s);
ojson json_of(const CliqueFormulaReport& r);
ojson json_of(const ACClassification& c);
ojson json_of(const NilpotentACProfile& p, const std::string& group);
ojson json_of(const PGroupLemmaReport& r);
ojson json_of(const Type3Report& r);
ojson json_of(const Type1Report& r);
ojson json_of(const CatalogEntry& e);
ojson json_of(const GraphPair& p);
ojson json_of(const TheoremCheck& c);
ojson json_of(const TheoremReport& r);

}  // namespace acg
