#include "ckdisc/report.hpp"

#include <cstdio>

namespace ckdisc {

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

} // namespace

std::string DiscrepancyReport::to_json_string() const {
    std::string out = "{\"value\":" + fmt(value) + ",\"witness\":";
    if (const Segment* s = std::get_if<Segment>(&witness)) {
        out += "{\"ax\":" + fmt(s->a.x) + ",\"ay\":" + fmt(s->a.y) + ",\"bx\":" + fmt(s->b.x) +
               ",\"by\":" + fmt(s->b.y) + "}";
    } else {
        const Circle& k = std::get<Circle>(witness);
        out += "{\"cx\":" + fmt(k.center.x) + ",\"cy\":" + fmt(k.center.y) +
               ",\"t\":" + fmt(k.radius) + "}";
    }
    out += ",\"method\":\"" + method + "\",\"search_size\":" + std::to_string(search_size) + "}";
    return out;
}

} // namespace ckdisc
