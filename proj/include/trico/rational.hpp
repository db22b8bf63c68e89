#pragma once
#include <gmpxx.h>
#include <string>
#include <stdexcept>
#include <json.hpp>

namespace trico {

using Rat = mpq_class;

inline std::string rat_str(const Rat& q) {
    Rat c = q;            // materialize before get_str: expression temporaries lack it
    c.canonicalize();
    return c.get_str();
}

inline Rat rat_parse(const std::string& s) {
    Rat q;
    if (q.set_str(s, 10) != 0)
        throw std::invalid_argument("bad rational literal: " + s);
    q.canonicalize();
    return q;
}

// reports carry rationals as decimal numerator/denominator strings
inline nlohmann::json rat_json(const Rat& q) {
    Rat c = q;
    c.canonicalize();
    mpz_class num = c.get_num(), den = c.get_den();
    return {{"num", num.get_str()}, {"den", den.get_str()}};
}

inline Rat rat_from_json(const nlohmann::json& j) {
    Rat q(mpz_class(j.at("num").get<std::string>()),
          mpz_class(j.at("den").get<std::string>()));
    q.canonicalize();
    return q;
}

} // namespace trico
