//! Window opening state machine.
//!
//! A window opens when the schedule instructs it open and the room has
//! reached its setpoint; it closes once the air has cooled a configurable
//! margin (3 K by default) below the setpoint, or when the instruction is
//! withdrawn. Otherwise the state persists.

/// Next window state given the previous one.
pub fn window_state(
    was_open: bool,
    instruction: bool,
    t_air_c: f64,
    setpoint_c: f64,
    close_delta_k: f64,
) -> bool {
    if was_open {
        !(setpoint_c - t_air_c >= close_delta_k || !instruction)
    } else {
        instruction && t_air_c >= setpoint_c
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn never_instructed_never_opens() {
        let mut open = false;
        for t in [15.0, 19.0, 25.0, 30.0] {
            open = window_state(open, false, t, 19.0, 3.0);
            assert!(!open);
        }
    }

    #[test]
    fn opens_when_setpoint_reached_under_instruction() {
        assert!(!window_state(false, true, 18.9, 19.0, 3.0));
        assert!(window_state(false, true, 19.0, 19.0, 3.0));
        assert!(window_state(false, true, 21.5, 19.0, 3.0));
    }

    #[test]
    fn closes_after_cooling_three_kelvin_below_setpoint() {
        let mut open = true;
        open = window_state(open, true, 17.5, 19.0, 3.0);
        assert!(open, "1.5 K below setpoint stays open");
        open = window_state(open, true, 16.0, 19.0, 3.0);
        assert!(!open, "3 K below setpoint closes");
        // and stays closed until the opening condition holds again
        assert!(!window_state(false, true, 17.0, 19.0, 3.0));
    }

    #[test]
    fn withdrawn_instruction_closes() {
        assert!(!window_state(true, false, 22.0, 19.0, 3.0));
    }
}
