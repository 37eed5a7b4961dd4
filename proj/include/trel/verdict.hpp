#pragma once

namespace trel {

/// Three-valued result: a sentence can be true, false, or neither (a gap).
enum class Verdict { True, False, Gap };

inline const char* to_string(Verdict v) {
    switch (v) {
    case Verdict::True: return "TRUE";
    case Verdict::False: return "FALSE";
    default: return "GAP";
    }
}

/// The involution induced by negation: TRUE and FALSE swap, GAP is fixed.
inline Verdict mirrored(Verdict v) {
    switch (v) {
    case Verdict::True: return Verdict::False;
    case Verdict::False: return Verdict::True;
    default: return Verdict::Gap;
    }
}

} // namespace trel
