#include "slaprp/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace slaprp {

using nlohmann::json;

Instance instance_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw Error(std::string("malformed JSON: ") + e.what());
    }
    try {
        Instance inst;
        inst.name = j.value("name", std::string());
        const json& lj = j.at("layout");
        inst.layout.kind = layout_kind_from_string(lj.value("kind", std::string("single_block")));
        inst.layout.aisles = lj.at("aisles").get<int>();
        inst.layout.bays = lj.at("bays").get<int>();
        inst.layout.D = lj.value("D", 1);
        inst.layout.d = lj.value("d", 1);
        const json& cap = lj.at("capacity");
        if (cap.is_array()) {
            inst.layout.capacity_override = cap.get<std::vector<int>>();
            inst.layout.capacity = inst.layout.capacity_override.empty() ? 1 : inst.layout.capacity_override.front();
        } else {
            inst.layout.capacity = cap.get<int>();
        }
        auto skus = j.at("skus").get<std::vector<int>>();
        for (std::size_t i = 0; i < skus.size(); ++i)
            if (skus[i] != static_cast<int>(i)) throw Error("SKU ids must be listed as 0..n-1");
        inst.num_skus = static_cast<int>(skus.size());
        inst.orders = j.at("orders").get<std::vector<std::vector<int>>>();
        if (j.contains("fixed"))
            for (const auto& p : j.at("fixed")) {
                if (!p.is_array() || p.size() != 2) throw Error("fixed entries must be [sku, location] pairs");
                inst.fixed.emplace_back(p[0].get<int>(), p[1].get<int>());
            }
        inst.seed = j.value("seed", std::uint64_t{0});
        inst.default_policy = j.value("default_policy", std::string());
        if (j.contains("metadata"))
            for (auto it = j.at("metadata").begin(); it != j.at("metadata").end(); ++it)
                inst.metadata.emplace_back(it.key(), it.value().get<std::string>());
        return inst;
    } catch (const json::exception& e) {
        throw Error(std::string("bad instance document: ") + e.what());
    }
}

std::string instance_to_json(const Instance& inst) {
    json j;
    j["name"] = inst.name;
    json lj;
    lj["kind"] = to_string(inst.layout.kind);
    lj["aisles"] = inst.layout.aisles;
    lj["bays"] = inst.layout.bays;
    lj["D"] = inst.layout.D;
    lj["d"] = inst.layout.d;
    if (inst.layout.capacity_override.empty())
        lj["capacity"] = inst.layout.capacity;
    else
        lj["capacity"] = inst.layout.capacity_override;
    j["layout"] = lj;
    std::vector<int> skus(inst.num_skus);
    for (int s = 0; s < inst.num_skus; ++s) skus[s] = s;
    j["skus"] = skus;
    j["orders"] = inst.orders;
    json fx = json::array();
    for (auto [s, l] : inst.fixed) fx.push_back({s, l});
    j["fixed"] = fx;
    j["seed"] = inst.seed;
    if (!inst.default_policy.empty()) j["default_policy"] = inst.default_policy;
    if (!inst.metadata.empty()) {
        json m = json::object();
        for (const auto& [k, v] : inst.metadata) m[k] = v;
        j["metadata"] = m;
    }
    return j.dump() + "\n";
}

std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw Error("cannot open " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error("cannot write " + path);
    f << content;
    if (!f) throw Error("write failed for " + path);
}

Instance load_instance(const std::string& path) { return instance_from_json(read_file(path)); }

void save_instance(const Instance& inst, const std::string& path) { write_file(path, instance_to_json(inst)); }

std::string instance_hash(const Instance& inst) {
    std::string t = instance_to_json(inst);
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : t) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace slaprp
