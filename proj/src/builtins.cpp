#include "objspec/builtins.hpp"
#include "objspec/errors.hpp"

#include <cmath>

namespace objspec {

namespace {

bool parse_threshold(const std::string& name, double& c) {
    // threshold(<real>)
    const std::string prefix = "threshold(";
    if (name.rfind(prefix, 0) != 0 || name.back() != ')') return false;
    const std::string inner = name.substr(prefix.size(), name.size() - prefix.size() - 1);
    try {
        std::size_t used = 0;
        c = std::stod(inner, &used);
        return used == inner.size();
    } catch (const std::exception&) {
        return false;
    }
}

} // namespace

ScalarFn builtin_scalar_fn(const std::string& name) {
    if (name == "identity") return [](double x) { return x; };
    if (name == "abs") return [](double x) { return std::abs(x); };
    if (name == "negate") return [](double x) { return -x; };
    double c = 0.0;
    if (parse_threshold(name, c)) return [c](double x) { return x >= c ? 1.0 : 0.0; };
    throw ValidationError("unknown scalar wrapper: " + name);
}

double shannon_entropy(const std::vector<double>& dist) {
    double h = 0.0;
    for (double p : dist)
        if (p > 0.0) h -= p * std::log(p);
    return h;
}

double support_count_zeros(const std::vector<double>& dist) {
    int zeros = 0;
    for (double p : dist)
        if (p == 0.0) zeros++;
    return static_cast<double>(zeros);
}

ActionDistFn builtin_regularizer(const std::string& name) {
    if (name == "entropy") return shannon_entropy;
    if (name == "support-count") return support_count_zeros;
    throw ValidationError("unknown regularizer: " + name);
}

VectorFn builtin_vector_fn(const std::string& name) {
    if (name == "sum")
        return [](const std::vector<double>& v) {
            double s = 0.0;
            for (double x : v) s += x;
            return s;
        };
    if (name == "first") return [](const std::vector<double>& v) { return v.at(0); };
    if (name == "max")
        return [](const std::vector<double>& v) {
            double m = v.at(0);
            for (double x : v) m = std::max(m, x);
            return m;
        };
    throw ValidationError("unknown vector wrapper: " + name);
}

Ordering lexicographic_compare(const std::vector<double>& v1, const std::vector<double>& v2) {
    if (v1.size() != v2.size()) throw DimensionMismatch("lexicographic compare: length mismatch");
    for (std::size_t i = 0; i < v1.size(); i++) {
        const Ordering o = ordering_of(v1[i], v2[i]);
        if (o != Ordering::Equal) return o;
    }
    return Ordering::Equal;
}

VectorPreorder lexicographic_preorder() {
    return [](const std::vector<double>& a, const std::vector<double>& b) {
        return lexicographic_compare(a, b);
    };
}

RealPreorder threshold_preorder(double c) {
    return [c](double x, double y) {
        const int lx = x >= c ? 1 : 0;
        const int ly = y >= c ? 1 : 0;
        if (lx < ly) return Ordering::Less;
        if (lx > ly) return Ordering::Greater;
        return Ordering::Equal;
    };
}

VectorPreorder preorder_from_function(VectorFn f) {
    return [f = std::move(f)](const std::vector<double>& a, const std::vector<double>& b) {
        return ordering_of(f(a), f(b));
    };
}

VectorPreorder builtin_vector_preorder(const std::string& name) {
    if (name == "lexicographic") return lexicographic_preorder();
    if (name == "sum-induced") return preorder_from_function(builtin_vector_fn("sum"));
    if (name == "first-induced") return preorder_from_function(builtin_vector_fn("first"));
    throw ValidationError("unknown vector preorder: " + name);
}

PolicyFn indicator_policy_fn(Policy target) {
    return [target = std::move(target)](const Policy& pi) {
        return pi == target ? 1.0 : 0.0;
    };
}

} // namespace objspec
