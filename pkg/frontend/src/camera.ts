/** Orbit camera shared across the split-screen panels.
 *
 * A pose is spherical (theta around the up axis, phi from the equator,
 * distance from the target). With sync on, every panel reads and writes one
 * shared pose object, so interaction in any panel moves all of them in
 * lockstep; toggling sync off hands each panel its own copy.
 */

export interface CameraPose {
  theta: number;
  phi: number;
  distance: number;
  targetX: number;
  targetY: number;
  targetZ: number;
}

export function defaultPose(): CameraPose {
  return { theta: 0.6, phi: 0.35, distance: 260, targetX: 0, targetY: 0, targetZ: 0 };
}

export function clonePose(pose: CameraPose): CameraPose {
  return { ...pose };
}

export function posesEqual(a: CameraPose, b: CameraPose): boolean {
  return (
    a.theta === b.theta &&
    a.phi === b.phi &&
    a.distance === b.distance &&
    a.targetX === b.targetX &&
    a.targetY === b.targetY &&
    a.targetZ === b.targetZ
  );
}

const PHI_LIMIT = Math.PI / 2 - 0.01;

export function orbit(pose: CameraPose, dTheta: number, dPhi: number): void {
  pose.theta += dTheta;
  pose.phi = Math.max(-PHI_LIMIT, Math.min(PHI_LIMIT, pose.phi + dPhi));
}

export function zoom(pose: CameraPose, factor: number): void {
  pose.distance = Math.max(1e-3, pose.distance * factor);
}

/** Project a world point to canvas pixels (simple perspective, +z up). */
export function projectPoint(
  pose: CameraPose,
  point: [number, number, number],
  width: number,
  height: number,
  focal = 1.2,
): [number, number, number] | null {
  const ct = Math.cos(pose.theta), st = Math.sin(pose.theta);
  const cp = Math.cos(pose.phi), sp = Math.sin(pose.phi);
  // camera position on the orbit sphere
  const ex = pose.targetX + pose.distance * cp * ct;
  const ey = pose.targetY + pose.distance * cp * st;
  const ez = pose.targetZ + pose.distance * sp;
  // forward = target - eye, normalized
  let fx = pose.targetX - ex, fy = pose.targetY - ey, fz = pose.targetZ - ez;
  const fn = Math.hypot(fx, fy, fz);
  fx /= fn; fy /= fn; fz /= fn;
  // right = forward x up(0,0,1), normalized
  let rx = fy, ry = -fx, rz = 0;
  const rn = Math.hypot(rx, ry, rz) || 1;
  rx /= rn; ry /= rn;
  // true up = right x forward
  const ux = ry * fz - rz * fy;
  const uy = rz * fx - rx * fz;
  const uz = rx * fy - ry * fx;
  const dx = point[0] - ex, dy = point[1] - ey, dz = point[2] - ez;
  const camX = dx * rx + dy * ry + dz * rz;
  const camY = dx * ux + dy * uy + dz * uz;
  const camZ = dx * fx + dy * fy + dz * fz; // depth along view axis
  if (camZ <= 1e-6) return null; // behind the camera
  const scale = (focal * Math.min(width, height)) / camZ;
  return [width / 2 + camX * scale, height / 2 - camY * scale, camZ];
}

/** Pose bookkeeping for N panels with a shared-or-independent toggle. */
export class CameraRig {
  private shared: CameraPose = defaultPose();
  private individual = new Map<string, CameraPose>();
  private synced = true;

  get syncEnabled(): boolean {
    return this.synced;
  }

  poseFor(panelId: string): CameraPose {
    if (this.synced) return this.shared;
    let pose = this.individual.get(panelId);
    if (!pose) {
      pose = clonePose(this.shared);
      this.individual.set(panelId, pose);
    }
    return pose;
  }

  setSync(on: boolean): void {
    if (on === this.synced) return;
    if (on) {
      // adopt the first panel's pose as the common one
      const first = this.individual.values().next().value as CameraPose | undefined;
      if (first) this.shared = clonePose(first);
      this.individual.clear();
    } else {
      this.individual.clear(); // panels fork lazily from the shared pose
    }
    this.synced = on;
  }
}
