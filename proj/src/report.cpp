#include "paracount/report.hpp"

#include <sstream>

namespace paracount {

Json poly_to_json(const QPoly& p) {
    Json coeffs = Json::array();
    for (const Rat& c : p.coeffs())
        coeffs.push_back(Json::array({c.get_num().get_str(), c.get_den().get_str()}));
    return Json{{"coeffs_ascending", coeffs}, {"string", p.to_string()}};
}

Json qrat_to_json(const QRat& r) {
    if (r.is_polynomial()) return poly_to_json(r.as_polynomial());
    return Json{{"num", poly_to_json(r.num())}, {"den", poly_to_json(r.den())},
                {"string", r.to_string()}};
}

Json report_to_json(const VerifyReport& rep) {
    Json lines = Json::array();
    for (const auto& l : rep.lines) lines.push_back(l);
    return Json{{"pass", rep.pass}, {"checks", lines}};
}

FPoly parse_poly(const FqField& F, const std::string& text) {
    // sum of terms c, t, t^k, c*t^k with integer (prime-subfield) coefficients
    std::vector<fcode> coeffs;
    auto set_coeff = [&](int deg, long c) {
        if (static_cast<int>(coeffs.size()) <= deg) coeffs.resize(deg + 1, 0);
        coeffs[deg] = F.add(coeffs[deg], F.from_int(c));
    };
    std::string s;
    for (char ch : text)
        if (!isspace(static_cast<unsigned char>(ch))) s += ch;
    size_t pos = 0;
    bool neg = false;
    while (pos < s.size()) {
        if (s[pos] == '+') {
            neg = false;
            ++pos;
            continue;
        }
        if (s[pos] == '-') {
            neg = true;
            ++pos;
            continue;
        }
        long c = 1;
        bool have_num = false;
        size_t start = pos;
        while (pos < s.size() && isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (pos > start) {
            c = std::stol(s.substr(start, pos - start));
            have_num = true;
        }
        if (pos < s.size() && s[pos] == '*') ++pos;
        int deg = 0;
        if (pos < s.size() && s[pos] == 't') {
            ++pos;
            deg = 1;
            if (pos < s.size() && s[pos] == '^') {
                ++pos;
                start = pos;
                while (pos < s.size() && isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
                deg = std::stoi(s.substr(start, pos - start));
            }
        } else if (!have_num) {
            throw std::domain_error("parse_poly: cannot parse '" + text + "'");
        }
        set_coeff(deg, neg ? -c : c);
    }
    return FPoly(&F, std::move(coeffs));
}

std::vector<int> parse_int_list(const std::string& text) {
    std::vector<int> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.push_back(std::stoi(item));
    }
    if (out.empty()) throw std::domain_error("empty integer list");
    return out;
}

Multipartition parse_multipartition(const std::string& text) {
    Multipartition mu;
    std::stringstream ss(text);
    std::string coord;
    while (std::getline(ss, coord, ';')) {
        Partition part = parse_int_list(coord);
        std::sort(part.rbegin(), part.rend());
        mu.push_back(part);
    }
    if (mu.empty()) throw std::domain_error("empty multipartition");
    return mu;
}

namespace {

void flatten(const Json& j, const std::string& prefix, std::string& out) {
    if (j.is_object()) {
        for (auto it = j.begin(); it != j.end(); ++it)
            flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), out);
    } else if (j.is_array()) {
        int i = 0;
        for (const auto& v : j) flatten(v, prefix + "[" + std::to_string(i++) + "]", out);
    } else {
        out += prefix + "," + (j.is_string() ? j.get<std::string>() : j.dump()) + "\n";
    }
}

}  // namespace

std::string json_to_csv(const Json& j) {
    std::string out = "key,value\n";
    flatten(j, "", out);
    return out;
}

}  // namespace paracount
