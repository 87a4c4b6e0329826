use super::PlaneWave;
use crate::geometry::Contour;
use crate::medium::Medium;
use crate::CVector;

/// `E_z` and tangential `H` of the plane wave at every collocation midpoint.
pub fn incident_boundary_fields(contour: &Contour, wave: &PlaneWave, background: &Medium) -> (CVector, CVector) {
    let segs = contour.segments();
    let e = CVector::from_iterator(segs.len(), segs.iter().map(|s| wave.field_at(background, s.midpoint)));
    let h = CVector::from_iterator(
        segs.len(),
        segs.iter().map(|s| wave.tangential_h_at(background, s.midpoint, s.normal)),
    );
    (e, h)
}
