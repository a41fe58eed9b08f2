#pragma once

#include <string>

#include "slaprp/model.hpp"

namespace slaprp {

// Canonical JSON instance format:
// {"name", "layout":{"kind","aisles","bays","D","d","capacity"}, "skus":[...],
//  "orders":[[...]], "fixed":[[sku,loc]], "seed"}
Instance instance_from_json(const std::string& text);
std::string instance_to_json(const Instance& inst);

Instance load_instance(const std::string& path);
void save_instance(const Instance& inst, const std::string& path);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

// FNV-1a over the canonical JSON text.
std::string instance_hash(const Instance& inst);

}  // namespace slaprp
