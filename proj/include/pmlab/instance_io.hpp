#pragma once

// Line-oriented instance files:
//
//   PMLAB 1 <family>
//   param <key>=<value>          (one per parameter, seed included)
//   doc <id> <payload>           ("set <id> <ids>" for si files)
//   queries implicit | queries explicit, followed by "query <cells>" lines
//   stagelog <key>=<value>
//
// Families: 2p, fp, 2fp, si, wci-query, wci-space, gpi.  Files are
// self-describing: generate_from_header() on the parsed header reproduces
// the file byte for byte.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "pmlab/gapped.hpp"
#include "pmlab/two_pattern.hpp"
#include "pmlab/wildcard.hpp"

namespace pmlab {

inline constexpr int kFormatVersion = 1;

using ParamList = std::vector<std::pair<std::string, std::string>>;

struct InstanceFile {
    std::string family;
    ParamList params;
    std::string record = "doc";  // "set" for si files
    std::vector<std::string> docs;
    bool explicit_queries = false;
    std::vector<std::string> queries;
    std::vector<std::pair<std::string, std::uint64_t>> stage_log;

    // Throws FormatError(0, ...) when the key is absent.
    const std::string& param(const std::string& key) const;

    friend bool operator==(const InstanceFile&, const InstanceFile&) = default;
};

InstanceFile parse_instance(std::istream& in);
InstanceFile parse_instance(const std::string& text);
std::string emit_instance(const InstanceFile& file);

InstanceFile read_instance_file(const std::string& path);
void write_instance_file(const std::string& path, const InstanceFile& file);

// "k=v,k=v" -> list; ParameterError on malformed items.
ParamList parse_param_list(const std::string& text);

// Canonical header parameters.  Unknown keys raise ParameterError; missing
// keys keep their defaults.
Params2P params_2p(const ParamList& params);
ParamsWciQuery params_wci_query(const ParamList& params);
ParamsWciSpace params_wci_space(const ParamList& params);
ParamsGpi params_gpi(const ParamList& params);

InstanceFile to_file(const Instance2P& inst);
InstanceFile to_file(const WciInstance& inst);
InstanceFile to_file(const SIReduction& red, const Params2P& source);
InstanceFile to_file(const ParamsGpi& params);

Instance2P to_instance_2p(const InstanceFile& file);
WciInstance to_wci_instance(const InstanceFile& file);
SIInstance to_si_instance(const InstanceFile& file);
ParamsGpi to_gpi_params(const InstanceFile& file);

// Builds the instance named by family + params (seed is one of the params).
InstanceFile generate_from_header(const std::string& family, const ParamList& params);
// True iff regenerating from the file's own header reproduces it exactly.
bool regenerates_identically(const InstanceFile& file);

}  // namespace pmlab
