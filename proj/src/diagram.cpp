#include "arcgeo/diagram.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include <json.hpp>

namespace arcgeo {

LinkDiagram::LinkDiagram(PDCode pd, std::vector<bool> reversed) : pd_(std::move(pd)), reversed_(std::move(reversed))
{
    if (pd_.empty())
        throw StructureError("diagram has no crossings");
    build_edges();
    build_components();
    if (reversed_.empty())
        reversed_.assign(component_count_, false);
    if (static_cast<int>(reversed_.size()) != component_count_)
        throw StructureError("orientation flag count " + std::to_string(reversed_.size()) +
                             " does not match component count " + std::to_string(component_count_));
    build_orientation();
    build_regions();
}

void LinkDiagram::build_edges()
{
    std::map<int, std::vector<Endpoint>> uses;
    for (int c = 0; c < crossing_count(); ++c)
        for (int s = 0; s < 4; ++s)
            uses[pd_[c][s]].push_back({c, s});
    for (auto& [label, ends] : uses)
        if (ends.size() != 2)
            throw StructureError("edge " + std::to_string(label) + " is used " + std::to_string(ends.size()) +
                                 " times (expected 2)");
    if (static_cast<int>(uses.size()) != 2 * crossing_count())
        throw StructureError("expected " + std::to_string(2 * crossing_count()) + " edges, found " +
                             std::to_string(uses.size()));
    slot_edge_.assign(4 * crossing_count(), -1);
    for (auto& [label, ends] : uses) {
        DiagramEdge e;
        e.label = label;
        e.ends[0] = ends[0];
        e.ends[1] = ends[1];
        int idx = static_cast<int>(edges_.size());
        for (auto& p : ends)
            slot_edge_[p.crossing * 4 + p.slot] = idx;
        edges_.push_back(e);
    }
}

int LinkDiagram::edge_index(int label) const
{
    auto it = std::lower_bound(edges_.begin(), edges_.end(), label,
                               [](const DiagramEdge& e, int l) { return e.label < l; });
    if (it == edges_.end() || it->label != label)
        throw std::runtime_error("unknown edge label " + std::to_string(label));
    return static_cast<int>(it - edges_.begin());
}

Endpoint LinkDiagram::other_end(int crossing, int slot) const
{
    const DiagramEdge& e = edges_[edge_at(crossing, slot)];
    if (e.ends[0].crossing == crossing && e.ends[0].slot == (slot & 3))
        return e.ends[1];
    return e.ends[0];
}

void LinkDiagram::build_components()
{
    // strands run straight through a crossing: slot s <-> slot s+2
    for (int i = 0; i < edge_count(); ++i) {
        if (edges_[i].component >= 0)
            continue;
        int comp = component_count_++;
        int cur = i;
        Endpoint at = edges_[i].ends[1];
        while (edges_[cur].component < 0) {
            edges_[cur].component = comp;
            int next_slot = (at.slot + 2) & 3;
            cur = edge_at(at.crossing, next_slot);
            at = other_end(at.crossing, next_slot);
        }
    }
}

void LinkDiagram::build_orientation()
{
    const int n = crossing_count();
    incoming_.assign(4 * n, 0);
    std::vector<char> done(component_count_, 0);
    auto run = [&](int c, int s) {
        // walk the strand entering (c, s)
        int cc = c, ss = s;
        while (true) {
            if (incoming_[cc * 4 + ss] || incoming_[cc * 4 + ((ss + 2) & 3)])
                break;
            incoming_[cc * 4 + ss] = 1;
            Endpoint nx = other_end(cc, (ss + 2) & 3);
            cc = nx.crossing;
            ss = nx.slot;
        }
    };
    for (int c = 0; c < n; ++c) {
        int comp = edges_[edge_at(c, 0)].component;
        if (done[comp])
            continue;
        done[comp] = 1;
        run(c, reversed_[comp] ? 2 : 0);
    }
    // components that never pass under: follow increasing labels
    for (int c = 0; c < n; ++c) {
        int comp = edges_[edge_at(c, 1)].component;
        if (done[comp])
            continue;
        done[comp] = 1;
        int a = pd_[c][1], b = pd_[c][3];
        bool in1 = (b == a + 1) || (a > b + 1);
        if (reversed_[comp])
            in1 = !in1;
        run(c, in1 ? 1 : 3);
    }
}

void LinkDiagram::build_regions()
{
    const int n = crossing_count();
    corner_region_.assign(4 * n, -1);
    for (int c = 0; c < n; ++c) {
        for (int s = 0; s < 4; ++s) {
            if (corner_region_[c * 4 + s] >= 0)
                continue;
            Region r;
            r.id = static_cast<int>(regions_.size());
            r.color = (s & 1) ? 1 : -1;
            int cc = c, ss = s;
            while (corner_region_[cc * 4 + ss] < 0) {
                corner_region_[cc * 4 + ss] = r.id;
                r.corners.push_back({cc, ss});
                Endpoint nx = other_end(cc, (ss + 1) & 3);
                cc = nx.crossing;
                ss = nx.slot;
            }
            regions_.push_back(std::move(r));
        }
    }
    if (static_cast<int>(regions_.size()) != n + 2)
        throw StructureError("face count " + std::to_string(regions_.size()) + " violates V-E+F=2 (expected " +
                             std::to_string(n + 2) + "); diagram is not a connected planar 4-valent graph");
}

int LinkDiagram::over_end(int edge) const
{
    const DiagramEdge& e = edges_[edge];
    return (e.ends[0].slot & 1) ? e.ends[0].crossing : e.ends[1].crossing;
}

int LinkDiagram::under_end(int edge) const
{
    const DiagramEdge& e = edges_[edge];
    return (e.ends[0].slot & 1) ? e.ends[1].crossing : e.ends[0].crossing;
}

std::string LinkDiagram::to_string() const
{
    // written so that the first entry is the incoming under-strand
    std::ostringstream os;
    for (int c = 0; c < crossing_count(); ++c) {
        int r = incoming(c, 0) ? 0 : 2;
        if (c)
            os << ' ';
        os << "X[";
        for (int k = 0; k < 4; ++k)
            os << (k ? "," : "") << pd_[c][(r + k) & 3];
        os << ']';
    }
    return os.str();
}

namespace {

PDCode parse_json_pd(const std::string& text)
{
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what(), e.byte);
    }
    const nlohmann::json& arr = j.is_object() ? j.at("crossings") : j;
    if (!arr.is_array())
        throw ParseError("expected an array of crossings", 0);
    PDCode pd;
    for (auto& x : arr) {
        if (!x.is_array() || x.size() != 4)
            throw ParseError("each crossing needs exactly four integers", 0);
        std::array<int, 4> q{};
        for (int k = 0; k < 4; ++k)
            q[k] = x[k].get<int>();
        pd.push_back(q);
    }
    return pd;
}

PDCode parse_text_pd(const std::string& t)
{
    PDCode pd;
    std::size_t i = 0;
    auto skip = [&]() {
        while (i < t.size() && (std::isspace(static_cast<unsigned char>(t[i])) || t[i] == ','))
            ++i;
    };
    auto expect = [&](char ch) {
        if (i >= t.size() || t[i] != ch)
            throw ParseError(std::string("expected '") + ch + "'", i);
        ++i;
    };
    skip();
    bool wrapped = false;
    if (t.compare(i, 3, "PD[") == 0) {
        wrapped = true;
        i += 3;
    }
    while (true) {
        skip();
        if (i >= t.size())
            break;
        if (wrapped && t[i] == ']') {
            ++i;
            skip();
            if (i < t.size())
                throw ParseError("trailing characters after PD[...]", i);
            wrapped = false;
            break;
        }
        expect('X');
        expect('[');
        std::array<int, 4> q{};
        for (int k = 0; k < 4; ++k) {
            while (i < t.size() && std::isspace(static_cast<unsigned char>(t[i])))
                ++i;
            std::size_t start = i;
            if (i < t.size() && t[i] == '-')
                ++i;
            while (i < t.size() && std::isdigit(static_cast<unsigned char>(t[i])))
                ++i;
            if (start == i || (i == start + 1 && t[start] == '-'))
                throw ParseError("expected integer", start);
            q[k] = std::stoi(t.substr(start, i - start));
            while (i < t.size() && std::isspace(static_cast<unsigned char>(t[i])))
                ++i;
            if (k < 3)
                expect(',');
        }
        expect(']');
        pd.push_back(q);
    }
    if (wrapped)
        throw ParseError("unterminated PD[", t.size());
    if (pd.empty())
        throw ParseError("no crossings found", 0);
    return pd;
}

}  // namespace

LinkDiagram parse_pd(const std::string& text)
{
    auto first = text.find_first_not_of(" \t\r\n");
    if (first == std::string::npos)
        throw ParseError("empty PD code", 0);
    if (text[first] == '{' || (text[first] == '[' && text.find('X') == std::string::npos))
        return LinkDiagram(parse_json_pd(text));
    return LinkDiagram(parse_text_pd(text));
}

std::vector<Region> faces(const LinkDiagram& d)
{
    return d.regions();
}

DiagramReport classify(const LinkDiagram& d)
{
    DiagramReport rep;
    // along each strand, consecutive visits must alternate over/under
    rep.alternating = true;
    for (const auto& e : d.edges()) {
        bool a = LinkDiagram::over_slot(e.ends[0].slot), b = LinkDiagram::over_slot(e.ends[1].slot);
        if (a == b) {
            rep.alternating = false;
            break;
        }
    }
    if (!rep.alternating)
        rep.notes.push_back("over/under parity repeats along a strand");

    std::set<int> nug;
    for (const auto& r : d.regions()) {
        if (r.arity() == 2)
            rep.bigons.push_back(r.id);
        std::vector<int> seen;
        for (const auto& c : r.corners) {
            if (std::find(seen.begin(), seen.end(), c.crossing) != seen.end())
                nug.insert(c.crossing);
            seen.push_back(c.crossing);
        }
    }
    rep.nugatory.assign(nug.begin(), nug.end());
    rep.reduced = rep.nugatory.empty();
    if (!rep.reduced)
        rep.notes.push_back("nugatory crossing present");

    // twist chains: crossings joined through bigons
    std::vector<int> parent(d.crossing_count());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x)
            x = parent[x] = parent[parent[x]];
        return x;
    };
    for (int b : rep.bigons) {
        const auto& r = d.regions()[b];
        parent[find(r.corners[0].crossing)] = find(r.corners[1].crossing);
    }
    // two regions meeting at two crossings outside a common twist chain
    const auto& regs = d.regions();
    for (std::size_t i = 0; i < regs.size() && !rep.twist_warning; ++i) {
        for (std::size_t j = i + 1; j < regs.size() && !rep.twist_warning; ++j) {
            std::vector<int> shared;
            for (auto& a : regs[i].corners)
                for (auto& b : regs[j].corners)
                    if (a.crossing == b.crossing && ((a.slot + 2) & 3) == b.slot)
                        shared.push_back(a.crossing);
            for (std::size_t p = 0; p < shared.size(); ++p)
                for (std::size_t q = p + 1; q < shared.size(); ++q)
                    if (shared[p] != shared[q] && find(shared[p]) != find(shared[q]))
                        rep.twist_warning = true;
        }
    }
    if (rep.twist_warning)
        rep.notes.push_back("two regions meet at crossings of different twist chains; diagram may not be twist reduced");
    return rep;
}

LinkDiagram orient(const LinkDiagram& d, const std::vector<bool>& reverse)
{
    if (static_cast<int>(reverse.size()) != d.component_count())
        throw std::runtime_error("orient: expected " + std::to_string(d.component_count()) + " flags, got " +
                                 std::to_string(reverse.size()));
    std::vector<bool> flags = d.orientation();
    for (std::size_t i = 0; i < flags.size(); ++i)
        flags[i] = flags[i] != reverse[i];
    return LinkDiagram(d.pd(), flags);
}

}  // namespace arcgeo
