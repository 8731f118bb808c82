#include "sofic/json_io.hpp"

#include "sofic/error.hpp"
#include "sofic/group_catalog.hpp"

namespace sofic::json_io {

namespace {

std::string kind_field(const json& j)
{
    if (!j.is_object() || !j.contains("type") || !j["type"].is_string())
        throw ConfigError("group needs a string field \"type\"");
    return j["type"].get<std::string>();
}

int positive_int(const json& j, const char* key)
{
    if (!j.contains(key) || !j[key].is_number_integer() || j[key].get<long long>() < 1)
        throw ConfigError(std::string("group field \"") + key + "\" must be a positive integer");
    return j[key].get<int>();
}

double number(const json& j, const char* key, double fallback)
{
    if (!j.contains(key))
        return fallback;
    if (!j[key].is_number())
        throw ConfigError(std::string("field \"") + key + "\" must be a number");
    return j[key].get<double>();
}

} // namespace

GroupSpec group_from_json(const json& j)
{
    const std::string type = kind_field(j);
    if (type == "free")
        return GroupSpec::free(positive_int(j, "rank"));
    if (type == "zpow")
        return GroupSpec::zpow(positive_int(j, "dim"));
    if (type != "finite")
        throw ConfigError("unknown group type \"" + type + "\"");
    if (j.contains("name")) {
        const std::string name = j["name"].is_string() ? j["name"].get<std::string>() : "";
        for (auto& g : catalog::small_groups(24))
            if (g.name == name)
                return g.group;
        throw ConfigError("no catalogue group named \"" + name + "\"");
    }
    if (!j.contains("table") || !j["table"].is_array())
        throw ConfigError("finite group needs \"table\" or \"name\"");
    std::vector<std::vector<int>> table;
    for (const auto& row : j["table"]) {
        if (!row.is_array())
            throw ConfigError("group table rows must be arrays");
        std::vector<int> r;
        for (const auto& v : row) {
            if (!v.is_number_integer())
                throw ConfigError("group table entries must be integers");
            r.push_back(v.get<int>());
        }
        table.push_back(std::move(r));
    }
    int identity = 0;
    if (j.contains("identity")) {
        if (!j["identity"].is_number_integer())
            throw ConfigError("group field \"identity\" must be an integer");
        identity = j["identity"].get<int>();
    }
    return GroupSpec::finite(table, identity, true);
}

json group_to_json(const GroupSpec& group)
{
    switch (group.kind()) {
    case GroupKind::free:
        return {{"type", "free"}, {"rank", group.rank()}};
    case GroupKind::zpow:
        return {{"type", "zpow"}, {"dim", group.dim()}};
    case GroupKind::finite:
        break;
    }
    const int n = group.order();
    json table = json::array();
    for (int a = 0; a < n; ++a) {
        json row = json::array();
        for (int b = 0; b < n; ++b)
            row.push_back(group.table_product(a, b));
        table.push_back(row);
    }
    return {{"type", "finite"}, {"table", table}, {"identity", group.identity().data()[0]}};
}

GroupElement element_from_json(const GroupSpec& group, const json& j)
{
    GroupElement g;
    switch (group.kind()) {
    case GroupKind::free:
        if (!j.is_string())
            throw ConfigError("free group elements are words such as \"a b^-1\", got " + j.dump());
        g = group.parse_word(j.get<std::string>());
        break;
    case GroupKind::zpow: {
        std::vector<std::int64_t> v;
        if (j.is_number_integer() && group.dim() == 1) {
            v.push_back(j.get<std::int64_t>());
        } else if (j.is_array()) {
            for (const auto& c : j) {
                if (!c.is_number_integer())
                    throw ConfigError("Z^k elements are integer arrays, got " + j.dump());
                v.push_back(c.get<std::int64_t>());
            }
        } else {
            throw ConfigError("Z^k elements are integer arrays, got " + j.dump());
        }
        if (static_cast<int>(v.size()) != group.dim())
            throw ConfigError("element " + j.dump() + " has the wrong dimension");
        g = GroupElement::vec(v);
        break;
    }
    case GroupKind::finite:
        if (!j.is_number_integer())
            throw ConfigError("finite group elements are indices, got " + j.dump());
        g = GroupElement::index(j.get<std::int64_t>());
        break;
    }
    if (!group.contains(g))
        throw ConfigError("element " + j.dump() + " is not in the group");
    return g;
}

json element_to_json(const GroupSpec& group, const GroupElement& g)
{
    switch (group.kind()) {
    case GroupKind::free:
        return group.format(g);
    case GroupKind::zpow:
        return json(std::vector<std::int64_t>(g.data().begin(), g.data().end()));
    case GroupKind::finite:
        break;
    }
    return g.data()[0];
}

std::vector<GroupElement> elements_from_json(const GroupSpec& group, const json& j)
{
    if (!j.is_array())
        throw ConfigError("expected a list of group elements, got " + j.dump());
    std::vector<GroupElement> out;
    for (const auto& e : j)
        out.push_back(element_from_json(group, e));
    return out;
}

GroupRingElement ring_from_json(const GroupSpec& group, const json& j)
{
    if (!j.is_array())
        throw ConfigError("group ring elements are lists of {\"g\", \"re\", \"im\"} terms");
    GroupRingElement out(group);
    for (const auto& term : j) {
        if (!term.is_object() || !term.contains("g"))
            throw ConfigError("group ring term needs a field \"g\"");
        out.add(element_from_json(group, term["g"]), Complex(number(term, "re", 0.0), number(term, "im", 0.0)));
    }
    return out;
}

json ring_to_json(const GroupRingElement& alpha)
{
    json out = json::array();
    for (const auto& [g, c] : alpha.support())
        out.push_back({{"g", element_to_json(alpha.group(), g)}, {"re", c.real()}, {"im", c.imag()}});
    return out;
}

} // namespace sofic::json_io
