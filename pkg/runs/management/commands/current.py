import logging

from current import current_field, sign_law_violations
from runs.contouring import crossing_violations, zero_contours
from runs.exporters import WarningLog, contour_frame, current_frame, sidecar, write_frame, write_json
from runs.management.base import RunCommand
from wigner import wigner_box_field

logger = logging.getLogger(__name__)


class Command(RunCommand):
    help = 'Write W with the Wigner current (jx, jp) and the W = 0 contours for every configured time'

    def execute_run(self, run, *args, **options):
        files, summary = [], []
        scale = run.scaling.factor
        resolution = run.config.get('resolution') or 64
        with WarningLog() as caught:
            for index, t in enumerate(run.times):
                entry = self._write_time(run, index, t, scale, resolution, files, caught)
                summary.append(entry)
                self._report(t, entry)
            write_json(sidecar(run, 'current', files, {'summary': summary}, caught), run.out_dir / 'current.json')
        self.stdout.write(self.style.SUCCESS(f"Wrote {len(run.times)} current fields to {run.out_dir}"))

    def _write_time(self, run, index, t, scale, resolution, files, caught):
        field = wigner_box_field(run.state, run.reference_grid, run.reference_time(t))
        currents = current_field(run.state, run.reference_shape, run.reference_grid,
                                 run.reference_time(t), w=field, resolution=resolution)
        caught.add('RemovableSingularity', currents.wall_nodes)
        # back to the billiard's own units
        values = currents.values.copy()
        values[..., :run.grid.dim] /= scale
        values[..., run.grid.dim:] /= scale ** 3

        files.append(write_frame(current_frame(run.grid, field.values, values),
                                 run.out_dir / f"current_{index:03d}.csv"))
        entry = {'t': t, 'sign_law_violations': sign_law_violations(field, currents)}
        if run.grid.dim == 1:
            segments = zero_contours(run.grid, field.values)
            files.append(write_frame(contour_frame(segments), run.out_dir / f"contours_{index:03d}.csv"))
            checked, crossings = crossing_violations(run.grid, field.values, segments)
            entry.update(contours=len(segments), crossing_checked=checked, crossing_violations=crossings)
        return entry

    def _report(self, t, entry):
        broken = entry['sign_law_violations']
        crossings = entry.get('crossing_violations', 0)
        if broken:
            self.stdout.write(self.style.WARNING(f"t={t:g}: {broken} nodes break sign(jx) = sign(p W)"))
        if crossings:
            self.stdout.write(self.style.WARNING(
                f"t={t:g}: jx keeps its direction across {crossings} of "
                f"{entry['crossing_checked']} contour segments; nodal lines closer than one cell"
            ))
            logger.info("crossing violations at t=%s: %d of %d", t, crossings, entry['crossing_checked'])
        if not broken and not crossings:
            self.stdout.write(f"t={t:g}: current written")
