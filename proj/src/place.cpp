#include "qflab/place.hpp"

// Place and Field are header-only; this translation unit anchors the header
// in the library build.
