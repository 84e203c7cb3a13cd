#pragma once

#include <string>
#include <vector>

#include "teich/surface.hpp"

namespace teich {

/// Names of the bundled example triangulations.
std::vector<std::string> bundled_surface_names();

/// Throws DomainError for unknown names.
SurfaceDescription bundled_description(const std::string& name);
TriangulatedSurface bundled_surface(const std::string& name);

}  // namespace teich
