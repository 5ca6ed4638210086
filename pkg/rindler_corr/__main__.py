from rindler_corr.sweep import main

raise SystemExit(main())
