#pragma once

// Everything at once: ingest, completion, Fourier, peeling, generators, checking, I/O.

#include "qsp/completion.hpp"
#include "qsp/decompose.hpp"
#include "qsp/dyadic.hpp"
#include "qsp/errors.hpp"
#include "qsp/fourier.hpp"
#include "qsp/ingest.hpp"
#include "qsp/io.hpp"
#include "qsp/mat2.hpp"
#include "qsp/poly.hpp"
#include "qsp/precision.hpp"
#include "qsp/real.hpp"
#include "qsp/roots.hpp"
#include "qsp/targets.hpp"
#include "qsp/twiddle.hpp"
#include "qsp/verify.hpp"
