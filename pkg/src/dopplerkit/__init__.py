"""Doppler-effect modeling toolkit.

Closed-form and numerical Doppler models: classical near/far field,
relativistic (vacuum and media), accelerated frames and gravitation,
ionospheric and tropospheric refraction, land sensing and satellite
navigation budgets, and acoustics, with a crest-tracking simulator as a
brute-force cross-check and a scenario-driven CLI.
"""

__version__ = "0.1.0"

from .core import (  # noqa: F401
    C_LIGHT,
    EARTH,
    EarthModel,
    FrameRotation,
    KinematicState,
    Trajectory,
    Vec3,
    elevation_angle,
    relativistic_velocity_add,
    rotation_ecef_to_eci,
    rotation_eci_to_ecef,
    solve_light_time,
    station_velocity_ecef,
    station_velocity_eci,
)
from .errors import DomainError, NumericError, ValidationError  # noqa: F401
from .classical import (  # noqa: F401
    CloseZoneConfig,
    DopplerSample,
    circular_doppler,
    close_zone_period,
    far_field_shift,
    general_motion_frequency,
    linear_accel_doppler,
    two_event_period,
)
from .oracle import (  # noqa: F401
    CrestRecord,
    DilationSpec,
    OracleResult,
    estimate_frequency,
    simulate_crests,
)
from .gravity_accel import (  # noqa: F401
    A_MAX_ROTOR_FIT,
    AccelFrameConfig,
    OblateSpec,
    PotentialSpec,
    ROTOR_K_DILATION,
    ROTOR_K_LATER_ROTORS,
    ROTOR_K_REANALYZED,
    accel_frame_shift_exact,
    accel_frame_shift_first_order,
    friedman_shift,
    gravitational_shift,
    rotor_energy_shift,
    schwarzschild_ratio,
    schwarzschild_ratio_first_order,
)
from .relativistic import (  # noqa: F401
    MediumSpec,
    MotionAverages,
    circular_relativistic,
    general_motion_shift,
    longitudinal_shift,
    medium_uniform_shift,
    motion_averages_from_history,
    moving_medium_wave_speed,
    rel_accel_average_velocity,
    rel_accel_velocity,
)
from .applications import (  # noqa: F401
    DopplerBudget,
    IONO_TOP_ALTITUDE,
    SatNavScenario,
    SensingGeometry,
    bistatic_doppler,
    dual_frequency_combine,
    invert_target_velocity,
    satnav_doppler_budget,
    satnav_interference_terms,
    satnav_period_ratio,
)
from .acoustic import (  # noqa: F401
    AcousticScenario,
    MachInfo,
    acoustic_shift,
    mach_info,
    medium_wave_params,
)
from .atmosphere import (  # noqa: F401
    IonoProfile,
    KAPPA_IONO,
    LowElevationWarning,
    PhasePath,
    SHELL_HEIGHT_IONO,
    TropoProfile,
    appleton_hartree_n2,
    elevation_rate,
    flat_iono_doppler,
    phase_path_doppler,
    profile_Ne,
    read_vtec_csv,
    simplified_iono_n,
    tec_doppler,
    tec_rate,
    tropo_doppler,
    tropo_ftheta,
    tropo_refractivity,
    vtec_to_stec,
)
