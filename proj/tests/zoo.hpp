#pragma once

// Symbols and self-maps shared by the property and acceptance suites.

#include <string>
#include <vector>

namespace zoo {

inline const std::vector<std::string>& symbols() {
    static const std::vector<std::string> list = {
        "z",           "z^2/2",          "z^3 - 0.5*z",         "log(1/(1-z))", "(1-z)^0.3",
        "(1-z)^0.5",   "pow(1+z, 0.7)",  "(z-0.3)/(1-0.3*z)",   "log(2-z)",     "(1-z)^0.3*log(1/(1-z)) + z",
    };
    return list;
}

inline const std::vector<std::string>& maps() {
    static const std::vector<std::string> list = {
        "z", "z/2", "(1+z)/2", "z^2", "(z+0.4)/(1+0.4*z)", "0.9*z^3",
    };
    return list;
}

}  // namespace zoo
