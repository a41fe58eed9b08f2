#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace slaprp {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class LayoutKind { single_block, two_block_mid_depot };

const char* to_string(LayoutKind k);
LayoutKind layout_kind_from_string(const std::string& s);

// Rectangular warehouse. For two_block_mid_depot, `bays` counts the bays of one
// block; every aisle then holds 2*bays locations, numbered front to back.
struct Layout {
    LayoutKind kind = LayoutKind::single_block;
    int aisles = 1;
    int bays = 1;
    int D = 1;
    int d = 1;
    int capacity = 2;
    std::vector<int> capacity_override;  // empty, or one entry per location

    int locations_per_aisle() const { return kind == LayoutKind::two_block_mid_depot ? 2 * bays : bays; }
    int num_locations() const { return aisles * locations_per_aisle(); }
    int capacity_of(int l) const { return capacity_override.empty() ? capacity : capacity_override[l]; }
    int total_capacity() const;
    bool valid(std::string* why = nullptr) const;
};

// Location ids are aisle-major: l = (aisle-1)*locations_per_aisle + (bay-1).
struct Location {
    int id = 0;
    int aisle = 1;
    int bay = 1;
    int capacity = 1;
    int first_node = 1;  // node id of v_l^1; v_l^i is first_node + i - 1
};

inline constexpr int kDepot = -1;

int location_id(const Layout& lay, int aisle, int bay);
int aisle_of(const Layout& lay, int l);
int bay_of(const Layout& lay, int l);

// Geometry shared by the distance functions and the policies.
// y is measured from the front cross aisle; cross aisles lie at y in cross_aisles().
long long y_of(const Layout& lay, int l);
long long x_of(const Layout& lay, int aisle);
std::vector<long long> cross_aisles(const Layout& lay);
long long depot_y(const Layout& lay);

// Shortest rectilinear walking distance; either argument may be kDepot.
long long base_distance(const Layout& lay, int l1, int l2);
long long two_block_distance(const Layout& lay, int l1, int l2);

struct Arc {
    int from;
    int to;
};

// Node 0 is the depot; storage nodes are 1..num_storage_nodes.
struct WarehouseGraph {
    std::vector<Location> locations;
    std::vector<int> node_location;  // node -> location (-1 for depot)
    std::vector<int> node_visit;     // node -> visit index i (0 for depot)
    std::vector<Arc> arcs;
    std::vector<std::vector<int>> out;  // node -> arc indices
    std::vector<std::vector<int>> in;

    int num_nodes() const { return static_cast<int>(node_location.size()); }
    int num_storage_nodes() const { return num_nodes() - 1; }
    int node(int l, int visit) const { return locations[l].first_node + visit - 1; }
    bool has_arc(int from, int to) const;
};

WarehouseGraph build_graph(const Layout& lay);

struct Instance {
    std::string name;
    Layout layout;
    int num_skus = 0;                            // SKUs are 0..num_skus-1
    std::vector<std::vector<int>> orders;        // SKU ids per order
    std::vector<std::pair<int, int>> fixed;      // (sku, location)
    std::uint64_t seed = 0;
    std::string default_policy;                  // optional hint written by generators
    std::vector<std::pair<std::string, std::string>> metadata;

    int num_orders() const { return static_cast<int>(orders.size()); }
    std::vector<int> demand() const;                          // d_s
    std::vector<std::vector<int>> orders_of_sku() const;      // O(s), sorted
    std::vector<int> fixed_location() const;                  // sku -> location or -1
};

struct Violation {
    std::string code;
    std::string message;
};

std::vector<Violation> validate_instance(const Instance& inst);

Instance generate_silva_instance(int aisles, int bays, int n_orders, int order_size, std::uint64_t seed);

struct GuoOptions {
    int aisles = 4;
    int bays_per_block = 5;
    int capacity = 2;
    int total_skus = 80;
    int min_order_size = 1;
    int max_order_size = 10;
};

Instance generate_guo_instance(double alpha, int n_orders, std::uint64_t seed, const GuoOptions& opt = {});

// Free-form generator used for test-scale instances.
struct RandomInstanceOptions {
    Layout layout;
    int num_skus = 4;
    int num_orders = 2;
    int min_order_size = 1;
    int max_order_size = 3;
    int num_fixed = 0;
    std::uint64_t seed = 1;
};

Instance generate_random_instance(const RandomInstanceOptions& opt);

// SKU -> location map.
using Assignment = std::vector<int>;

}  // namespace slaprp
