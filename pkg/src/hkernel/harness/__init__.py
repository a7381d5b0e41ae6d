"""Verification harness: gallery, suites, calibration, tabulation, reports and CLI."""

from .calibrate import CalibrationResult, calibrate
from .gallery import GALLERY_NAMES, GalleryFunction, gallery, gaussian_L_alpha
from .report import VerificationReport, all_passed, reports_to_csv, reports_to_json
from .suites import SUITES, RunConfig, list_checks, run_suite
