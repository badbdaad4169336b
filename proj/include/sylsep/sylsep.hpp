#pragma once

#include "sylsep/audio_clip.hpp"
#include "sylsep/cepstral.hpp"
#include "sylsep/dataset.hpp"
#include "sylsep/error.hpp"
#include "sylsep/fir.hpp"
#include "sylsep/frame_matrix.hpp"
#include "sylsep/preprocess.hpp"
#include "sylsep/resample.hpp"
#include "sylsep/separability.hpp"
#include "sylsep/svg.hpp"
#include "sylsep/sylf.hpp"
#include "sylsep/wav.hpp"
