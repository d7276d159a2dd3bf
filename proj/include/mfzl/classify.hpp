#pragma once

// Classification of zeros: CM point with a recognized discriminant, or a
// transcendental candidate when bounded algebraic searches find nothing.

#include "mfzl/cm.hpp"
#include "mfzl/jpoly.hpp"
#include "mfzl/lattice.hpp"
#include "mfzl/locator.hpp"

#include <optional>
#include <string>
#include <vector>

namespace mfzl {

struct RecognitionBounds {
    /// Largest degree tried for the minimal polynomial of j(z).
    long d_max = 8;
    /// log10 of the coefficient height bound.
    double log10_h_max = 40;
    /// Precision used by the searches.
    long bits = 256;
};

/// Primitive (a, b, c), a > 0, b^2 - 4ac < 0, with a z^2 + b z + c ~ 0.
std::optional<QuadraticForm> recognize_quadratic(const Complex& z, const RecognitionBounds& bounds = {});

struct JRecognition {
    /// Monic minimal polynomial, ascending coefficients.
    IntVector minpoly;
    long degree() const { return static_cast<long>(minpoly.size()) - 1; }
    bool is_integer() const { return degree() == 1; }
    Integer integer_value() const { return -minpoly[0]; }
};

/// Recognizes x as an algebraic integer: an integer snap first, then monic relations of degree 2..d_max.
std::optional<JRecognition> recognize_algebraic_integer(const Complex& x, const RecognitionBounds& bounds = {},
                                                        long only_degree = 0);
/// Same for j(z).
std::optional<JRecognition> recognize_j_integer(const Complex& z, const RecognitionBounds& bounds = {});

struct Verdict {
    enum class Kind { CM, TranscendentalCandidate, Unresolved };
    Kind kind = Kind::Unresolved;
    long D = 0;
    QuadraticForm form;
    std::optional<JRecognition> j_minpoly;
    Complex j_value;
    long class_number = 0;
    RecognitionBounds bounds;
    std::string reason;

    std::string label() const;
};

Verdict classify_point(const Complex& z, const RecognitionBounds& bounds = {});
Verdict classify_zero(const ZeroRecord& rec, const RecognitionBounds& bounds = {});

struct IntegralityCertificate {
    JPolynomial polynomial;
    IntegralityReport report;
};

/// P_f followed by its integrality report; a leading integer with a non-integral
/// coefficient guarantees that f has a transcendental zero.
IntegralityCertificate integrality_certificate(const QSeries& f, long k);

}  // namespace mfzl
