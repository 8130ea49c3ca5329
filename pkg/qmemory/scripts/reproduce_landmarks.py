# qmemory/scripts/reproduce_landmarks.py
import logging
from math import pi

from qmemory.config import LOG_LEVEL
from qmemory.controllers.sweep_controller import landmark_crossing, sweep_w_family
from qmemory.controllers.threshold_controller import find_werner_threshold
from qmemory.services.entropy import conditional_entropy
from qmemory.services.states import make_qubit_qudit_example


def main():
    logging.basicConfig(level=LOG_LEVEL)
    crossing = landmark_crossing(sweep_w_family(pi / 4, 512))
    print(f"derivative crossing: {crossing.estimate:.4f} in [{crossing.lower:.4f}, {crossing.upper:.4f}]" if crossing
          else "derivative crossing: none found")
    threshold = find_werner_threshold()
    print(f"Werner threshold: r* = {threshold.r_star:.6f} after {threshold.iterations} bisections")
    print(f"qubit-qudit example: S(A|B) = {conditional_entropy(make_qubit_qudit_example(), 0, 1):.12f}")


if __name__ == "__main__":
    main()
