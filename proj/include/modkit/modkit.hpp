#pragma once

#include "modkit/cyclotomic.hpp"
#include "modkit/cyclinalg.hpp"
#include "modkit/interval.hpp"
#include "modkit/datum.hpp"
#include "modkit/datum_io.hpp"
#include "modkit/verlinde.hpp"
#include "modkit/axioms.hpp"
#include "modkit/sqrt.hpp"
#include "modkit/raw.hpp"
#include "modkit/frame.hpp"
#include "modkit/sldeg.hpp"
#include "modkit/pipeline.hpp"
#include "modkit/families.hpp"
