"""R-Theta Local Neighborhood Pattern (RTLNP) descriptor and retrieval evaluation."""

from .descriptor import (FeatureImage, Histogram, encode_bit, encode_pixel,
                         feature_image, histogram, rtlnp_histogram, subsector_average)
from .geometry import (RingOffset, RtlnpParams, SectorGeometry, build_geometry,
                       neighbor_index, neighbors_per_sector, ring_offsets, sector_count)
from .imaging import (GrayImage, ImageError, ImageFormatError, ImageNotFoundError,
                      load_grayscale, save_pgm, synth_image)
from .lbp import lbp_code, lbp_feature_image, lbp_histogram
from .metrics import (EvaluationRun, MetricsReport, anmrr, arp, arr, cmc, evaluate,
                      f_score, precision_at, recall_at, recognition_rate)
from .retrieval import (DatasetError, Descriptor, GalleryEntry, GalleryIndex, RankedList,
                        build_index, chi_square, rank_feature, rank_gallery)

__version__ = "0.1.0"
