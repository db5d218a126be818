from .contour import Rect, count_zeros_rect, winding_number
from .critical import SignScan, critical_zeros, refine_bracket, sign_scan, verify_root_near, xi_critical
from .seeding import SeedScanResult, SeedScanSettings, seed_scan

__all__ = [
    'Rect',
    'SeedScanResult',
    'SeedScanSettings',
    'SignScan',
    'count_zeros_rect',
    'critical_zeros',
    'refine_bracket',
    'seed_scan',
    'sign_scan',
    'verify_root_near',
    'winding_number',
    'xi_critical',
]
