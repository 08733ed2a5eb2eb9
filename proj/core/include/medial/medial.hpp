#pragma once

#include "medial/error.hpp"
#include "medial/exact_linalg.hpp"
#include "medial/group.hpp"
#include "medial/harness.hpp"
#include "medial/interchange.hpp"
#include "medial/rewrite.hpp"
#include "medial/signature.hpp"
#include "medial/spectral.hpp"
#include "medial/term.hpp"
#include "medial/total_color.hpp"
