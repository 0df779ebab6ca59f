#pragma once

#include <string>
#include <vector>

namespace qsl2r {

/// Outcome of one verification check: the worst residual seen, the
/// tolerance it was held to, and the verdict.
struct CheckReport {
    std::string name;
    double residual = 0.0;
    double threshold = 0.0;
    bool pass = false;
    double seconds = 0.0;
};

inline CheckReport make_report(std::string name, double residual, double threshold) {
    CheckReport r;
    r.name = std::move(name);
    r.residual = residual;
    r.threshold = threshold;
    r.pass = residual <= threshold;
    return r;
}

/// A check that must *fail* with a visible margin (documented negative case).
inline CheckReport make_negative_report(std::string name, double residual, double margin) {
    CheckReport r;
    r.name = std::move(name);
    r.residual = residual;
    r.threshold = margin;
    r.pass = residual > margin;
    return r;
}

}  // namespace qsl2r
