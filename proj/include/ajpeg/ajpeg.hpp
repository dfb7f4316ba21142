#pragma once

#include "ajpeg/bitstream.hpp"
#include "ajpeg/codec.hpp"
#include "ajpeg/corpus.hpp"
#include "ajpeg/decoder.hpp"
#include "ajpeg/estimator.hpp"
#include "ajpeg/image.hpp"
#include "ajpeg/mesh.hpp"
#include "ajpeg/metrics.hpp"
#include "ajpeg/ppm.hpp"
#include "ajpeg/refiner.hpp"
#include "ajpeg/transform.hpp"
#include "ajpeg/analysis/bound.hpp"
#include "ajpeg/analysis/ncx2.hpp"
#include "ajpeg/analysis/noise.hpp"
#include "ajpeg/analysis/operator.hpp"
#include "ajpeg/analysis/refprop.hpp"
