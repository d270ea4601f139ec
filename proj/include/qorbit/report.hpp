#pragma once
// JSON / CSV rendering of check results.  Reports are deterministic: key
// order is fixed, scalar values are exact strings, and half-integral
// quantities use the "p/2" / "p/4" forms so they round-trip losslessly.

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "qorbit/chevalley.hpp"
#include "qorbit/identities.hpp"
#include "qorbit/module_action.hpp"
#include "qorbit/quotient.hpp"

namespace qorbit {

inline constexpr const char* kArtifactName = "qorbit";
inline constexpr const char* kArtifactVersion = "0.1.0";

using Json = nlohmann::ordered_json;

std::string half2_str(int v2);      // doubled value -> "p" or "p/2"
std::string quarter4_str(int v4);   // quadrupled value -> "p", "p/2" or "p/4"

// Envelope every command shares: artifact stamp, command name, the echoed
// configuration, and the seed in effect.
Json make_report(const std::string& command, Json spec_echo, std::uint64_t seed);

Json identity_report(const std::vector<IdentityCheck>& checks);
Json lemma_report(const LemmaReport& lemma);
// `lemmas` is an array of lemma_report entries (or skipped-check stubs).
Json algebra_report(const QuotientBasis& basis, Json lemmas);
Json module_report(const ModuleRep& rep, const ModuleRelationReport& rel);

// lambda is the lowest weight in fundamental-weight coordinates; the oracle
// dimension comes from the classical dimension formula for its negative.
Json representation_report(const ModuleRep& rep, const ChevalleyRep& chev,
                           const UhRelationReport& uh);

Json operator_dump(const ModuleRep& rep);     // coordinate triplets of op()
Json basis_dump(const QuotientBasis& basis);  // standard words per degree

// One row per check object found anywhere in the report, in document order;
// missing columns are filled from the envelope's spec echo.
std::string to_csv(const Json& report);

}  // namespace qorbit
