#pragma once

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

namespace arcgeo {

using PDCode = std::vector<std::array<int, 4>>;

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& msg, std::size_t pos)
        : std::runtime_error(msg + " (at offset " + std::to_string(pos) + ")"), position(pos) {}
    std::size_t position;
};

class StructureError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Endpoint {
    int crossing = -1;
    int slot = -1;
};

struct DiagramEdge {
    int label = 0;          // label as written in the PD code
    Endpoint ends[2];
    int component = -1;
};

// Corner of a region at a crossing, between `slot` and `slot+1` (counterclockwise).
// Side j of a region is the edge sitting at `slot` of corner j.
struct Corner {
    int crossing = -1;
    int slot = -1;
};

struct Region {
    int id = -1;
    std::vector<Corner> corners;
    int color = 0;   // +1: corners at odd slots ("A"), -1: even slots ("B")
    int arity() const { return static_cast<int>(corners.size()); }
};

class LinkDiagram {
public:
    LinkDiagram() = default;
    explicit LinkDiagram(PDCode pd, std::vector<bool> reversed = {});

    int crossing_count() const { return static_cast<int>(pd_.size()); }
    const PDCode& pd() const { return pd_; }

    const std::vector<DiagramEdge>& edges() const { return edges_; }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    int edge_at(int crossing, int slot) const { return slot_edge_[crossing * 4 + (slot & 3)]; }
    int edge_index(int label) const;
    Endpoint other_end(int crossing, int slot) const;

    const std::vector<Region>& regions() const { return regions_; }
    int region_of(int crossing, int slot) const { return corner_region_[crossing * 4 + (slot & 3)]; }

    int component_count() const { return component_count_; }
    const std::vector<bool>& orientation() const { return reversed_; }

    // strand enters the crossing at this slot
    bool incoming(int crossing, int slot) const { return incoming_[crossing * 4 + (slot & 3)]; }
    // +1 when the over strand runs from slot 3 to slot 1
    int sign(int crossing) const { return incoming(crossing, 3) ? 1 : -1; }
    static bool over_slot(int slot) { return (slot & 1) == 1; }

    // crossing where the edge passes over / under
    int over_end(int edge) const;
    int under_end(int edge) const;

    std::string to_string() const;

private:
    void build_edges();
    void build_components();
    void build_orientation();
    void build_regions();

    PDCode pd_;
    std::vector<bool> reversed_;
    std::vector<DiagramEdge> edges_;
    std::vector<int> slot_edge_;
    std::vector<int> corner_region_;
    std::vector<char> incoming_;
    std::vector<Region> regions_;
    int component_count_ = 0;
};

struct DiagramReport {
    bool alternating = false;
    bool reduced = false;
    std::vector<int> bigons;          // region ids of arity 2
    std::vector<int> nugatory;        // crossings met twice by one region
    bool twist_warning = false;
    std::vector<std::string> notes;
};

LinkDiagram parse_pd(const std::string& text);
std::vector<Region> faces(const LinkDiagram& d);
DiagramReport classify(const LinkDiagram& d);
LinkDiagram orient(const LinkDiagram& d, const std::vector<bool>& reverse);

}  // namespace arcgeo
