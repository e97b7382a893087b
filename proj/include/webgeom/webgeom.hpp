#ifndef WEBGEOM_WEBGEOM_HPP
#define WEBGEOM_WEBGEOM_HPP

#include "webgeom/rational.hpp"
#include "webgeom/multipoly.hpp"
#include "webgeom/parse.hpp"
#include "webgeom/gcd.hpp"
#include "webgeom/resultant.hpp"
#include "webgeom/hermitian.hpp"
#include "webgeom/roots.hpp"
#include "webgeom/web.hpp"
#include "webgeom/contact.hpp"
#include "webgeom/first_integral.hpp"
#include "webgeom/clairaut.hpp"
#include "webgeom/trace.hpp"
#include "webgeom/classify.hpp"
#include "webgeom/formats.hpp"

#endif
