from tlcalc.cli import main

raise SystemExit(main())
