##### Clase Asíncrona del Toolkit #####

import asyncio
from pathlib import Path
from typing import List

from .base import BaseFloerToolkit
from .harness import Task, golden_tasks, run_task, verify_tasks
from .log import Log
from .reports import CheckResult
from .sync_toolkit import FloerToolkit

logger = Log(__name__)

##### Clase para Comprobaciones Asíncronas #####

class AsyncFloerToolkit(BaseFloerToolkit):
    """
    Ejecuta las comprobaciones independientes de ``verify`` y ``golden`` en hilos de trabajo,
    acotados por ``max_workers``, y devuelve los resultados en orden canónico.
    """

    async def _run_all(self, tasks: List[Task]) -> List[CheckResult]:
        semaphore = asyncio.Semaphore(max(1, int(self.engine_config['max_workers'])))

        async def run(task: Task) -> CheckResult:
            async with semaphore:
                return await asyncio.to_thread(run_task, task)

        # gather conserva el orden de entrada
        return list(await asyncio.gather(*(run(task) for task in tasks)))

    async def load(self, path):
        """Carga un archivo en un hilo de trabajo (mismo comportamiento que la versión sincrónica)."""
        return await asyncio.to_thread(FloerToolkit(self.engine_config).load, path)

    async def verify(self, obj) -> List[CheckResult]:
        """
        Ejecuta las comprobaciones aplicables al objeto en paralelo.

        Args:
            obj: Objeto ya cargado o ruta a un archivo.

        Returns:
            list[CheckResult]: Resultados en el mismo orden que la versión sincrónica.
        """
        if isinstance(obj, (str, Path)):
            obj = await self.load(obj)
        tasks = verify_tasks(obj, self.window, self.engine_config['cut_offset'])
        results = await self._run_all(tasks)
        failed = [r.name for r in results if not r.passed]
        if failed:
            logger.warning(f"Verification failures: {failed}")
        return results

    async def golden(self) -> List[CheckResult]:
        """Recalcula el corpus dorado en paralelo."""
        results = await self._run_all(golden_tasks())
        logger.info(f"Golden corpus: {sum(r.passed for r in results)}/{len(results)} passed")
        return results
